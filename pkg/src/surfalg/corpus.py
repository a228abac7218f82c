"""Algebra spec files: loading, validation, building, and the bundled corpus."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources

import jsonschema

from . import families
from .field import FieldError, FieldSpec, field_make
from .presentation import Presentation, PresentationError, weighted_surface_relations
from .quiver import Quiver, QuiverError, TriangulationQuiver, WeightData
from .rewrite import FiniteDimAlgebra, idempotent_algebra, quotient_algebra

SCHEMA = "surfalg-spec/1"


class SpecError(ValueError):
    """Malformed or inconsistent spec (exit code 2)."""


def _schema(name):
    return json.loads(resources.files("surfalg").joinpath("schemas", name).read_text())


_VALIDATOR = None


def validate(doc: dict):
    global _VALIDATOR
    if _VALIDATOR is None:
        _VALIDATOR = jsonschema.Draft202012Validator(_schema("spec.schema.json"))
    errs = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(e.path))
    if errs:
        e = errs[0]
        where = "/".join(str(x) for x in e.path) or "<root>"
        raise SpecError(f"spec does not match schema at {where}: {e.message}")


# family tag -> (builder, required params, optional params)
FAMILY_PARAMS = {
    "A": (["m", "c", "b"], []),
    "B": (["r", "c", "b"], []),
    "D": (["b", "c"], ["link"]),
    "Q2A": (["k", "b"], []),
    "Q2B3": (["t", "a", "b"], []),
    "disc_2_2": (["c", "b3", "b4"], []),
}


def _family_presentation(tag, params, F) -> Presentation:
    need, opt = FAMILY_PARAMS[tag]
    missing = [k for k in need if k not in params]
    extra = [k for k in params if k not in need and k not in opt]
    if missing or extra:
        raise SpecError(f"family {tag}: missing {missing} unexpected {extra}")
    p = params
    try:
        if tag == "A":
            return families.family_A(int(p["m"]), _s(p["c"]), _s(p["b"]), F)
        if tag == "B":
            return families.family_B(int(p["r"]), _s(p["c"]), _s(p["b"]), F)
        if tag == "D":
            if len(p["b"]) != 3 or len(p["c"]) != 3:
                raise SpecError("family D needs three values for b and for c")
            return families.family_D([_s(x) for x in p["b"]], [_s(x) for x in p["c"]], F,
                                     link=_s(p["link"]) if "link" in p else None)
        if tag == "Q2A":
            return families.family_Q2A(int(p["k"]), _s(p["b"]), F)
        if tag == "Q2B3":
            return families.family_Q2B3(int(p["t"]), _s(p["a"]), _s(p["b"]), F)
        return families.family_disc_2_2(_s(p["c"]), _s(p["b3"]), _s(p["b4"]), F)
    except (TypeError, KeyError) as e:
        raise SpecError(f"family {tag}: bad parameters ({e})") from e


def _s(x):
    # spec values are field-grammar strings; plain integers mean integers
    return str(x)


@dataclass
class Spec:
    doc: dict
    path: str
    sha256: str
    field: object

    @property
    def name(self):
        return self.doc.get("name") or self.path

    @property
    def options(self):
        return self.doc.get("options", {})

    @property
    def tags(self):
        return self.doc.get("tags", [])

    @property
    def expect(self):
        return self.doc.get("expect", {})

    def presentation(self) -> Presentation:
        d, F = self.doc, self.field
        try:
            if "family" in d:
                return _family_presentation(d["family"], d["params"], F)
            Q = Quiver(d["quiver"]["vertices"], d["quiver"]["arrows"])
            tq = TriangulationQuiver.from_f_cycles(Q, d["f"])
            w = d["weights"]
            wd = WeightData.make(tq, F, w["m"], {k: _s(v) for k, v in w.get("c", {}).items()} or None,
                                 {k: _s(v) for k, v in w.get("b", {}).items()})
            p = weighted_surface_relations(tq, wd)
            p.meta.setdefault("kind", "weighted surface")
            return p
        except (QuiverError, PresentationError, FieldError) as e:
            raise SpecError(str(e)) from e

    def build(self) -> FiniteDimAlgebra:
        """The algebra (or its corner e A e when the spec names one)."""
        p = self.presentation()
        A = quotient_algebra(p, self.options.get("degree_cap"))
        corner = self.doc.get("corner")
        if corner:
            names = [str(v) for v in corner]
            try:
                vs = [A.vertex_names.index(v) for v in names]
            except ValueError as e:
                raise SpecError(f"corner names an unknown vertex: {names}") from e
            A = idempotent_algebra(A, vs)
        return A

    def field_json(self):
        return self.field.spec.to_json()


def load_doc(doc: dict, path: str = "<inline>", raw: bytes | None = None) -> Spec:
    if not isinstance(doc, dict):
        raise SpecError("spec must be a JSON object")
    validate(doc)
    try:
        F = field_make(FieldSpec.from_json(doc["field"]))
    except FieldError as e:
        raise SpecError(str(e)) from e
    if raw is None:
        raw = json.dumps(doc, sort_keys=True).encode()
    return Spec(doc, path, hashlib.sha256(raw).hexdigest(), F)


def load_spec(path: str) -> Spec:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise SpecError(f"cannot read {path}: {e.strerror}") from e
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise SpecError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e
    return load_doc(doc, path, raw)


# ---- bundled corpus ---------------------------------------------------------------------

def corpus_names():
    d = resources.files("surfalg").joinpath("corpus")
    return sorted(p.name[:-5] for p in d.iterdir() if p.name.endswith(".json"))


def corpus_spec(name: str) -> Spec:
    f = resources.files("surfalg").joinpath("corpus", name + ".json")
    if not f.is_file():
        raise SpecError(f"no corpus entry named {name}")
    raw = f.read_bytes()
    return load_doc(json.loads(raw), f"corpus/{name}.json", raw)


def corpus(tag: str | None = None):
    out = [corpus_spec(n) for n in corpus_names()]
    return [s for s in out if tag is None or tag in s.tags]


def resolve(ref: str) -> Spec:
    """A path to a spec file, or the name of a corpus entry."""
    if ref.endswith(".json") or "/" in ref:
        return load_spec(ref)
    return corpus_spec(ref)
