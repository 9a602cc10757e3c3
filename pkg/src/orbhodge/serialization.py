"""JSON interchange for the input kinds the command line accepts.

Scalars travel as "p/q" strings (or bare integers); complex entries as
{"re", "im"} objects.  Shape problems (schema violations, ragged
matrices, bad vector lengths) raise InputError with JSON paths; whether
the decoded object satisfies its axioms is the job of the check
operations, which report rather than raise.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources

import jsonschema

from .exactla import GaussRational, QiMatrix, Subspace, as_gauss
from .filtration import DecreasingFiltration, IncreasingFiltration
from .hodge import BilinearFormData, HodgeStructureData
from .mhs import Bigrading
from .orbifold import OrbifoldData, SectorData
from .toric import LatticePolytope

KINDS = ("polytope", "hodge_structure", "pmhs", "orbifold")


class InputError(ValueError):
    """Invalid input, carrying (json_path, message) pairs."""

    def __init__(self, problems):
        self.problems = [(str(p), str(m)) for p, m in problems]
        super().__init__("; ".join(f"{p}: {m}" for p, m in self.problems))


_schemas = {}


def schema_for(kind: str) -> dict:
    if kind not in _schemas:
        text = (resources.files("orbhodge") / "schemas" / f"{kind}.schema.json").read_text()
        _schemas[kind] = json.loads(text)
    return _schemas[kind]


def validate_against_schema(obj, kind: str) -> None:
    validator = jsonschema.Draft202012Validator(schema_for(kind))
    errors = sorted(validator.iter_errors(obj), key=lambda e: e.json_path)
    if errors:
        raise InputError([(e.json_path, e.message) for e in errors])


def detect_kind(obj) -> str:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError([("$", 'missing "kind" discriminator')])
    kind = obj["kind"]
    if kind not in KINDS:
        raise InputError([("$.kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")])
    return kind


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------- scalars

def encode_rational(x) -> object:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def encode_scalar(x) -> object:
    g = as_gauss(x)
    if g.is_real():
        return encode_rational(g.re)
    return {"re": encode_rational(g.re), "im": encode_rational(g.im)}


def decode_rational(x, path: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError([(path, f"expected an integer or 'p/q' string, got {x!r}")])
    if isinstance(x, str) and not _REAL_RE.match(x):
        raise InputError([(path, f"not an integer or 'p/q' string: {x!r}")])
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError([(path, str(exc))]) from exc


def decode_scalar(x, path: str) -> GaussRational:
    if isinstance(x, dict):
        return GaussRational(decode_rational(x.get("re", 0), path + ".re"),
                             decode_rational(x.get("im", 0), path + ".im"))
    return GaussRational(decode_rational(x, path))


_RAT = r"[0-9]+(?:/[1-9][0-9]*)?"
_REAL_RE = re.compile(rf"^[+-]?{_RAT}$")
_COMPLEX_RE = re.compile(rf"^(?P<re>[+-]?{_RAT}(?=[+-]))?(?P<im>[+-]?(?:{_RAT})?)i$")


def parse_gauss_text(text: str) -> GaussRational:
    """Compact command-line form: '3', '-3/4', 'i', '2i', '1+i', '1/2-3/4i'."""
    s = text.strip().replace(" ", "")
    if _REAL_RE.match(s):
        return GaussRational(Fraction(s))
    m = _COMPLEX_RE.match(s)
    if not m:
        raise InputError([("$", f"cannot parse scalar {text!r}")])
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_text = m.group("im")
    if im_text in ("", "+"):
        im_part = Fraction(1)
    elif im_text == "-":
        im_part = Fraction(-1)
    else:
        im_part = Fraction(im_text)
    return GaussRational(re_part, im_part)


# ------------------------------------------------------- vectors, matrices

def encode_vector(v) -> list:
    return [encode_scalar(x) for x in v]


def decode_vector(v, path: str, length: int = None) -> list:
    out = [decode_scalar(x, f"{path}[{i}]") for i, x in enumerate(v)]
    if length is not None and len(out) != length:
        raise InputError([(path, f"expected length {length}, got {len(out)}")])
    return out


def encode_matrix(m: QiMatrix) -> list:
    return [encode_vector(m.row_list(i)) for i in range(m.rows)]


def decode_matrix(rows, path: str, shape=None) -> QiMatrix:
    decoded = [decode_vector(r, f"{path}[{i}]") for i, r in enumerate(rows)]
    widths = {len(r) for r in decoded}
    if len(widths) != 1:
        raise InputError([(path, "ragged matrix rows")])
    m = QiMatrix.from_rows(decoded, cols=widths.pop())
    if shape is not None and (m.rows, m.cols) != shape:
        raise InputError([(path, f"expected shape {shape[0]}x{shape[1]}, got {m.rows}x{m.cols}")])
    return m


def encode_basis(s: Subspace) -> list:
    return [encode_vector(v) for v in s.vectors()]


def decode_subspace(vectors, ambient_dim: int, path: str) -> Subspace:
    vecs = [decode_vector(v, f"{path}[{i}]", ambient_dim) for i, v in enumerate(vectors)]
    return Subspace.span(ambient_dim, vecs)


# ----------------------------------------------------------------- polytope

def polytope_to_json(p: LatticePolytope) -> dict:
    vertices = []
    for v in p.vertices:
        if any(x.denominator != 1 for x in v):
            raise ValueError("only lattice polytopes are serialized")
        vertices.append([int(x) for x in v])
    return {"kind": "polytope", "dim": p.dim, "vertices": vertices}


def polytope_from_json(obj) -> LatticePolytope:
    validate_against_schema(obj, "polytope")
    try:
        return LatticePolytope(obj["dim"], obj["vertices"])
    except ValueError as exc:
        raise InputError([("$.vertices", str(exc))]) from exc


# ----------------------------------------------------------- hodge structure

def _pieces_to_json(h: HodgeStructureData) -> list:
    return [{"p": int(p), "q": int(q), "basis": encode_basis(s)} for p, q, s in h.pieces]


def _pieces_from_json(items, ambient_dim: int, path: str) -> dict:
    pieces = {}
    for i, piece in enumerate(items):
        p, q = piece["p"], piece["q"]
        if (p, q) in pieces:
            raise InputError([(f"{path}[{i}]", f"duplicate piece ({p},{q})")])
        pieces[(p, q)] = decode_subspace(piece["basis"], ambient_dim, f"{path}[{i}].basis")
    return pieces


def hodge_structure_to_json(h: HodgeStructureData, form: BilinearFormData = None) -> dict:
    obj = {
        "kind": "hodge_structure",
        "ambient_dim": h.ambient_dim,
        "weight": int(h.weight),
        "pieces": _pieces_to_json(h),
    }
    if form is not None:
        obj["form"] = {"gram": encode_matrix(form.gram), "symmetry_sign": form.symmetry_sign}
    return obj


def hodge_structure_from_json(obj):
    """Returns (HodgeStructureData, BilinearFormData or None)."""
    validate_against_schema(obj, "hodge_structure")
    n = obj["ambient_dim"]
    pieces = _pieces_from_json(obj["pieces"], n, "$.pieces")
    try:
        h = HodgeStructureData(n, obj["weight"], pieces)
    except ValueError as exc:
        raise InputError([("$.pieces", str(exc))]) from exc
    form = None
    if "form" in obj:
        gram = decode_matrix(obj["form"]["gram"], "$.form.gram", shape=(n, n))
        try:
            form = BilinearFormData(gram, obj["form"]["symmetry_sign"])
        except ValueError as exc:
            raise InputError([("$.form", str(exc))]) from exc
    return h, form


# --------------------------------------------------------------------- pmhs

def _filtration_steps_to_json(filt) -> list:
    return [{"index": int(l), "basis": encode_basis(filt.at(l))} for l in filt.jump_indices()]


def pmhs_to_json(data: dict) -> dict:
    """Inverse of pmhs_from_json; expects the same bundle keys."""
    obj = {
        "kind": "pmhs",
        "ambient_dim": data["ambient_dim"],
        "weight": data["weight"],
        "form": encode_matrix(data["form"]),
        "nilpotents": [encode_matrix(m) for m in data["nilpotents"]],
    }
    if data.get("bigrading") is not None:
        big = data["bigrading"]
        obj["bigrading"] = [{"p": int(p), "q": int(q), "basis": encode_basis(s)}
                            for p, q, s in big.pieces]
    else:
        w, f = data["filtrations"]
        obj["filtrations"] = {
            "weight_filtration": _filtration_steps_to_json(w),
            "hodge_filtration": _filtration_steps_to_json(f),
        }
    if data.get("samples"):
        obj["samples"] = [[encode_scalar(z) for z in sample] for sample in data["samples"]]
    return obj


def pmhs_from_json(obj) -> dict:
    """Bundle: ambient_dim, weight, bigrading | filtrations, form (raw gram),
    nilpotents (raw matrices), samples.  Axioms are left to the checks."""
    validate_against_schema(obj, "pmhs")
    n = obj["ambient_dim"]
    out = {
        "ambient_dim": n,
        "weight": obj["weight"],
        "bigrading": None,
        "filtrations": None,
        "form": decode_matrix(obj["form"], "$.form", shape=(n, n)),
        "nilpotents": [decode_matrix(m, f"$.nilpotents[{i}]", shape=(n, n))
                       for i, m in enumerate(obj["nilpotents"])],
        "samples": None,
    }
    if "bigrading" in obj:
        pieces = []
        for i, piece in enumerate(obj["bigrading"]):
            s = decode_subspace(piece["basis"], n, f"$.bigrading[{i}].basis")
            pieces.append((piece["p"], piece["q"], s))
        try:
            out["bigrading"] = Bigrading(n, pieces)
        except ValueError as exc:
            raise InputError([("$.bigrading", str(exc))]) from exc
    else:
        steps = obj["filtrations"]

        def step_map(items, path):
            spaces = {}
            for i, st in enumerate(items):
                if st["index"] in spaces:
                    raise InputError([(f"{path}[{i}]", f"duplicate index {st['index']}")])
                spaces[st["index"]] = decode_subspace(st["basis"], n, f"{path}[{i}].basis")
            return spaces

        try:
            w = IncreasingFiltration.from_map(
                n, step_map(steps["weight_filtration"], "$.filtrations.weight_filtration"))
            f = DecreasingFiltration.from_map(
                n, step_map(steps["hodge_filtration"], "$.filtrations.hodge_filtration"))
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError([("$.filtrations", str(exc))]) from exc
        out["filtrations"] = (w, f)
    if "samples" in obj:
        samples = []
        for i, sample in enumerate(obj["samples"]):
            if len(sample) != len(out["nilpotents"]):
                raise InputError([(f"$.samples[{i}]",
                                   f"expected {len(out['nilpotents'])} coordinates")])
            samples.append(tuple(decode_scalar(z, f"$.samples[{i}][{j}]")
                                 for j, z in enumerate(sample)))
        out["samples"] = samples
    return out


# ----------------------------------------------------------------- orbifold

def expand_hodge_numbers(triples, path: str) -> dict:
    """Adapted-basis expansion of [[p, q, h], ...] into explicit structures.

    Per degree, bidegrees are laid out by descending p.  A pair (p,q),(q,p)
    with p > q and h each takes 2h consecutive coordinates, spanned by
    e_{2t} +- i e_{2t+1} so conjugation swaps the two pieces; a diagonal
    (p,p) block takes h real coordinates.
    """
    by_degree = {}
    for i, (p, q, h) in enumerate(triples):
        key = (p, q)
        degree = by_degree.setdefault(p + q, {})
        if key in degree:
            raise InputError([(f"{path}[{i}]", f"duplicate bidegree ({p},{q})")])
        degree[key] = h
    out = {}
    for k, hmap in sorted(by_degree.items()):
        for (p, q), h in hmap.items():
            if hmap.get((q, p)) != h:
                raise InputError([(path, f"h({p},{q})={h} has no matching h({q},{p})")])
        ambient = sum(hmap.values())
        pieces = {}
        offset = 0
        for (p, q) in sorted(hmap, key=lambda t: (-t[0], t[1])):
            h = hmap[(p, q)]
            if p < q:
                continue  # allocated with its mirror
            if p == q:
                vecs = []
                for t in range(h):
                    v = [0] * ambient
                    v[offset + t] = 1
                    vecs.append(v)
                pieces[(p, q)] = Subspace.span(ambient, vecs)
                offset += h
            else:
                plus, minus = [], []
                for t in range(h):
                    u = [GaussRational(0)] * ambient
                    v = [GaussRational(0)] * ambient
                    u[offset + 2 * t] = GaussRational(1)
                    v[offset + 2 * t] = GaussRational(1)
                    u[offset + 2 * t + 1] = GaussRational(0, 1)
                    v[offset + 2 * t + 1] = GaussRational(0, -1)
                    plus.append(u)
                    minus.append(v)
                pieces[(p, q)] = Subspace.span(ambient, plus)
                pieces[(q, p)] = Subspace.span(ambient, minus)
                offset += 2 * h
        out[k] = HodgeStructureData(ambient, k, pieces)
    return out


def orbifold_to_json(o: OrbifoldData) -> dict:
    sectors = []
    for s in o.sectors:
        cohomology = [{"degree": j, "pieces": _pieces_to_json(h)} for j, h in s.cohomology]
        pairing = [{"degree": j, "matrix": encode_matrix(m)}
                   for j, m in s.pairing if j <= s.dim]
        actions = []
        for c in range(len(s.kaehler_actions)):
            entries = []
            for j, m in s.kaehler_actions[c]:
                if m.rows and m.cols and not m.is_zero():
                    entries.append({"degree": j, "matrix": encode_matrix(m)})
            actions.append(entries)
        sectors.append({
            "id": s.id,
            "age": encode_rational(s.age),
            "partner": s.partner,
            "dim": s.dim,
            "cohomology": cohomology,
            "pairing": pairing,
            "kaehler_actions": actions,
        })
    return {"kind": "orbifold", "n": o.n,
            "kaehler_basis_size": o.kaehler_basis_size, "sectors": sectors}


def _sector_from_json(obj, r: int, path: str) -> SectorData:
    if "cohomology" in obj:
        cohomology = {}
        for i, entry in enumerate(obj["cohomology"]):
            j = entry["degree"]
            if j in cohomology:
                raise InputError([(f"{path}.cohomology[{i}]", f"duplicate degree {j}")])
            epath = f"{path}.cohomology[{i}].pieces"
            lengths = {len(v) for piece in entry["pieces"] for v in piece["basis"]}
            if len(lengths) != 1:
                raise InputError([(epath, "basis vectors disagree on the ambient dimension")])
            ambient = lengths.pop()
            pieces = _pieces_from_json(entry["pieces"], ambient, epath)
            try:
                cohomology[j] = HodgeStructureData(ambient, j, pieces)
            except ValueError as exc:
                raise InputError([(epath, str(exc))]) from exc
    else:
        triples = []
        for i, t in enumerate(obj["hodge_numbers"]):
            triples.append((int(t[0]), int(t[1]), int(t[2])))
        cohomology = expand_hodge_numbers(triples, f"{path}.hodge_numbers")
    pairing = {}
    for i, entry in enumerate(obj["pairing"]):
        j = entry["degree"]
        if j in pairing:
            raise InputError([(f"{path}.pairing[{i}]", f"duplicate degree {j}")])
        pairing[j] = decode_matrix(entry["matrix"], f"{path}.pairing[{i}].matrix")
    if len(obj["kaehler_actions"]) != r:
        raise InputError([(f"{path}.kaehler_actions",
                           f"expected {r} classes, got {len(obj['kaehler_actions'])}")])
    actions = []
    for c, entries in enumerate(obj["kaehler_actions"]):
        amap = {}
        for i, entry in enumerate(entries):
            j = entry["degree"]
            if j in amap:
                raise InputError([(f"{path}.kaehler_actions[{c}][{i}]", f"duplicate degree {j}")])
            amap[j] = decode_matrix(entry["matrix"], f"{path}.kaehler_actions[{c}][{i}].matrix")
        actions.append(amap)
    try:
        return SectorData(obj["id"], decode_rational(obj["age"], f"{path}.age"),
                          obj["partner"], obj["dim"], cohomology, pairing, actions)
    except InputError:
        raise
    except ValueError as exc:
        raise InputError([(path, str(exc))]) from exc


def orbifold_from_json(obj) -> OrbifoldData:
    validate_against_schema(obj, "orbifold")
    r = obj["kaehler_basis_size"]
    sectors = [_sector_from_json(s, r, f"$.sectors[{i}]")
               for i, s in enumerate(obj["sectors"])]
    try:
        return OrbifoldData(obj["n"], r, sectors)
    except ValueError as exc:
        raise InputError([("$.sectors", str(exc))]) from exc


# ------------------------------------------------------------------ loading

def load_document(text: str):
    """Parse, detect the kind, validate, decode.  Returns (kind, object)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError([("$", f"not valid JSON: {exc}")]) from exc
    kind = detect_kind(obj)
    decoder = {
        "polytope": polytope_from_json,
        "hodge_structure": hodge_structure_from_json,
        "pmhs": pmhs_from_json,
        "orbifold": orbifold_from_json,
    }[kind]
    return kind, decoder(obj)
