"""Hot loops: union-find quotients and integer-key tables.

The compiled module ``_ckernels`` is used when it was built and importable;
otherwise the numpy implementations in :mod:`._pykernels` are selected.
Setting ``NERFKIT_PURE=1`` forces the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("NERFKIT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernels

uf_min_labels = _impl.uf_min_labels
KeyTable = _impl.KeyTable

__all__ = ["BACKEND", "uf_min_labels", "KeyTable", "_pykernels"]
