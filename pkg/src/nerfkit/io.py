"""JSON file formats for every structure kind.

Each document is an object with a ``"kind"`` header field:

* ``presheaf``: ``n``, ``region`` (a cube bound or a list of boxes; ``bound`` is
  accepted as a synonym), ``sizes`` keyed by ``"m1,...,mn"`` (or ``cells``: label
  lists keyed the same way), ``actions`` keyed by ``"d/k/i@M"`` / ``"e/k/i@M"``,
  optional ``labels`` and ``name``;

Action keys: ``kind "/" axis "/" position "@" index`` where ``kind`` is ``d``
(face, deleting vertex ``position``) or ``e`` (degeneracy, repeating it),
``axis`` is 1-based, and ``index`` is the comma-separated source multi-index
(e.g. ``d/1/0@2,1``: the face ``Phi(2,1) -> Phi(1,1)``). Each value lists, for
every source cell, the index of its image.
* ``category``: ``objects`` (labels), ``arrows`` (``[label, src, tgt]``),
  ``ident``, ``comp`` (rows of the ``gf`` table, ``-1`` off the domain);
* ``strict``: ``n``, ``cells`` (labels per level), ``s``, ``b``, ``e``, ``comp``
  keyed by ``"i,j"``;
* ``weak2``: ``objects``, ``arrows``, ``cells2`` (``[label, s2, b2]``), ``e1``,
  ``e2``, ``comp1``, ``vcomp``, ``hcomp``, ``assoc`` (``[f, g, h, cell]``), ``U``, ``V``;
* ``morphism``: ``components`` keyed by index (source and target given separately);
* ``report``: free-form result documents written by the CLI.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .cat_nerve import FinCategory
from .presheaf import (FinPresheaf, PresheafMorphism, Region, action_key_str, fmt_index,
                       parse_action_key)
from .strict_ncat import StrictNCategory
from .weak2 import Weak2Category

KINDS = ("presheaf", "category", "strict", "weak2", "morphism", "report")


class FormatError(ValueError):
    pass


def _index(text: str, n: int, field: str):
    try:
        M = tuple(int(x) for x in text.split(",")) if text else ()
    except ValueError:
        raise FormatError(f"field {field}: bad index {text!r}") from None
    if len(M) != n:
        raise FormatError(f"field {field}: index {text!r} has arity {len(M)}, expected {n}")
    return M


def _need(doc: dict, key: str, kind: str):
    if key not in doc:
        raise FormatError(f"{kind} document: missing field {key!r}")
    return doc[key]


# ---------------------------------------------------------------------------
# encoders


def presheaf_to_json(phi: FinPresheaf) -> dict:
    doc = {"kind": "presheaf", "name": phi.name, "n": phi.n, "region": phi.region.to_json(),
           "sizes": {fmt_index(M): phi.sizes[M] for M in phi.region.indices()},
           "actions": {action_key_str(k): phi.actions[k].tolist()
                       for k, _ in phi.region.elementary_maps()}}
    if phi.labels:
        doc["labels"] = {fmt_index(M): list(map(str, lab)) for M, lab in sorted(phi.labels.items())}
    return doc


def category_to_json(C: FinCategory) -> dict:
    return {"kind": "category", "name": C.name, "objects": list(map(str, C.object_labels)),
            "arrows": [[str(C.arrow_labels[f]), int(C.src[f]), int(C.tgt[f])]
                       for f in range(C.n_arrows)],
            "ident": C.ident.tolist(), "comp": C.comp.tolist()}


def morphism_to_json(F: PresheafMorphism) -> dict:
    return {"kind": "morphism", "name": F.name, "n": F.n,
            "components": {fmt_index(M): c.tolist() for M, c in sorted(F.components.items())}}


def to_json(obj) -> dict:
    if isinstance(obj, FinPresheaf):
        return presheaf_to_json(obj)
    if isinstance(obj, FinCategory):
        return category_to_json(obj)
    if isinstance(obj, (StrictNCategory, Weak2Category)):
        return obj.to_json()
    if isinstance(obj, PresheafMorphism):
        return morphism_to_json(obj)
    if isinstance(obj, dict):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_json(obj), sort_keys=True, separators=(",", ":")) + "\n"


def save(obj, path) -> None:
    Path(path).write_text(dumps(obj))


# ---------------------------------------------------------------------------
# decoders


def parse(text: str, source: str = "<input>"):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise FormatError(f"{source}: top level must be an object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise FormatError(f"{source}: field 'kind' must be one of {', '.join(KINDS)}")
    try:
        return from_json(doc)
    except FormatError as exc:
        raise FormatError(f"{source}: {exc}") from None
    except (TypeError, ValueError, IndexError, KeyError) as exc:
        raise FormatError(f"{source}: malformed {kind} document ({exc})") from None


def load(path):
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None
    return parse(text, str(path))


def from_json(doc: dict):
    kind = doc["kind"]
    if kind == "presheaf":
        return _presheaf(doc)
    if kind == "category":
        return _category(doc)
    if kind == "strict":
        return _strict(doc)
    if kind == "weak2":
        return _weak2(doc)
    if kind == "morphism":
        return doc
    return doc


def _presheaf(doc):
    n = int(_need(doc, "n", "presheaf"))
    region = Region.coerce(n, doc["region"] if "region" in doc else _need(doc, "bound", "presheaf"))
    if "sizes" in doc:
        sizes = {_index(k, n, "sizes"): int(v) for k, v in doc["sizes"].items()}
    else:
        sizes = {_index(k, n, "cells"): len(v) for k, v in _need(doc, "cells", "presheaf").items()}
    actions = {}
    for k, v in _need(doc, "actions", "presheaf").items():
        try:
            key = parse_action_key(k)
        except ValueError as exc:
            raise FormatError(f"field actions: {exc}") from None
        actions[key] = np.asarray(v, dtype=np.int64)
    labels = None
    lab_doc = doc.get("labels", doc.get("cells") if "sizes" not in doc else None)
    if lab_doc is not None:
        labels = {_index(k, n, "labels"): list(map(str, v)) for k, v in lab_doc.items()}
    for M in region.indices():
        if M not in sizes:
            raise FormatError(f"field sizes: missing index {fmt_index(M)}")
    for key, _ in region.elementary_maps():
        if key not in actions:
            raise FormatError(f"field actions: missing {action_key_str(key)}")
        if actions[key].shape != (sizes[key[3]],):
            raise FormatError(f"field actions: {action_key_str(key)} has the wrong length")
    return FinPresheaf(n, region, sizes, actions, labels=labels, name=doc.get("name", ""))


def _category(doc):
    objs = list(map(str, _need(doc, "objects", "category")))
    arrows = _need(doc, "arrows", "category")
    n1 = len(arrows)
    comp = np.asarray(_need(doc, "comp", "category"), dtype=np.int64)
    if comp.shape != (n1, n1):
        raise FormatError(f"field comp: expected a {n1}x{n1} table")
    return FinCategory(len(objs), [a[1] for a in arrows], [a[2] for a in arrows],
                       _need(doc, "ident", "category"), comp, objs,
                       [str(a[0]) for a in arrows], name=doc.get("name", ""))


def _strict(doc):
    n = int(_need(doc, "n", "strict"))
    cells = _need(doc, "cells", "strict")
    if len(cells) != n + 1:
        raise FormatError(f"field cells: expected {n + 1} levels")
    comp = {}
    for k, v in _need(doc, "comp", "strict").items():
        i, j = _index(k, 2, "comp")
        comp[(i, j)] = v
    return StrictNCategory(n, [len(c) for c in cells], _need(doc, "s", "strict"),
                           _need(doc, "b", "strict"), _need(doc, "e", "strict"), comp,
                           [list(map(str, c)) for c in cells], name=doc.get("name", ""))


def _weak2(doc):
    objs = list(map(str, _need(doc, "objects", "weak2")))
    arrows = _need(doc, "arrows", "weak2")
    cells = _need(doc, "cells2", "weak2")
    n1, n2 = len(arrows), len(cells)
    assoc = -np.ones((n1, n1, n1), dtype=np.int64)
    for f, g, h, c in _need(doc, "assoc", "weak2"):
        assoc[f, g, h] = c
    return Weak2Category(len(objs), n1, n2, [a[1] for a in arrows], [a[2] for a in arrows],
                         _need(doc, "e1", "weak2"), [c[1] for c in cells],
                         [c[2] for c in cells], _need(doc, "e2", "weak2"),
                         _need(doc, "comp1", "weak2"), _need(doc, "vcomp", "weak2"),
                         _need(doc, "hcomp", "weak2"), assoc, _need(doc, "U", "weak2"),
                         _need(doc, "V", "weak2"), objs, [str(a[0]) for a in arrows],
                         [str(c[0]) for c in cells], name=doc.get("name", ""))


def morphism_from_json(doc: dict, source: FinPresheaf, target: FinPresheaf) -> PresheafMorphism:
    comps = {}
    n = source.n
    for k, v in _need(doc, "components", "morphism").items():
        comps[_index(k, n, "components")] = np.asarray(v, dtype=np.int64)
    region = source.region.intersect(target.region)
    for M in region.indices():
        if M not in comps:
            raise FormatError(f"field components: missing index {fmt_index(M)}")
        c = comps[M]
        if c.shape != (source.sizes[M],) or (c.size and (c.min() < 0 or c.max() >= target.sizes[M])):
            raise FormatError(f"field components: bad component at {fmt_index(M)}")
    return PresheafMorphism(source, target, {M: comps[M] for M in region.indices()},
                            name=doc.get("name", ""))
