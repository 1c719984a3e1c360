"""JSON encoding of the library's objects and parsing of problem files.

Rationals are strings ``"p/q"`` (or ``"p"``), matrices are row-major integer
arrays, and output is always written with sorted keys so that reading and
re-writing a report reproduces it byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .characters import Arrangement, TorsionCharacter, TranslatedSubgroup
from .cyclotomic import CyclotomicScalar
from .errors import DimensionError, InputError
from .groups import FgAbGroup, Homomorphism, Subgroup
from .jumploci import Constituent, Diagnosis, FiberProbe, Hypersurface, ObstructionReport
from .laurent import LaurentPolynomial, Presentation
from .lattice import IntMatrix, Lattice
from .spaces import SimplicialComplex, brieskorn_group, brieskorn_v1, toric_char_variety


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def rational_to_json(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational {x!r}") from exc
    raise InputError(f"rationals must be given as strings \"p/q\" or integers, got {x!r}")


def scalar_to_json(c):
    if isinstance(c, CyclotomicScalar):
        q = c.as_rational()
        if q is None:
            return {"conductor": c.conductor, "coeffs": [rational_to_json(v) for v in c.coeffs]}
        c = q
    return rational_to_json(c)


def parse_scalar(x):
    if isinstance(x, dict):
        try:
            return CyclotomicScalar(int(x["conductor"]), [parse_rational(v) for v in x["coeffs"]])
        except KeyError as exc:
            raise InputError(f"cyclotomic scalar missing field {exc}") from exc
    return parse_rational(x)


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what} must be an integer, got {x!r}")
    return x


def parse_int_matrix(rows, ncols: int | None = None, what: str = "matrix") -> list[list[int]]:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InputError(f"{what} must be a list of integer rows")
    out = [[_int(v, what + " entry") for v in r] for r in rows]
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise DimensionError(f"{what} has rows of different lengths")
    if ncols is not None and out and widths != {ncols}:
        raise DimensionError(f"{what} rows must have length {ncols}")
    return out


# ---------------------------------------------------------------------------
# groups and maps
# ---------------------------------------------------------------------------

def group_to_json(G: FgAbGroup) -> dict:
    return {"rank": G.free_rank, "torsion": list(G.torsion)}


def parse_group(d) -> FgAbGroup:
    if not isinstance(d, dict) or "rank" not in d:
        raise InputError("a group is {\"rank\": n, \"torsion\": [d1, ...]}")
    tors = d.get("torsion", [])
    if not isinstance(tors, list):
        raise InputError("torsion must be a list")
    return FgAbGroup.from_orders(_int(d["rank"], "rank"), [_int(t, "torsion factor") for t in tors])


def lattice_to_json(L: Lattice) -> list[list[int]]:
    return [list(b) for b in L.basis]


def subgroup_to_json(xi: Subgroup) -> dict:
    """Canonical generators (the relation vectors of a torsion part are omitted)."""
    gens = [list(g) for g in xi.generators()]
    return {"generators": gens, "rank": xi.free_rank,
            "determinant_group": list(xi.determinant_group().torsion)}


def parse_subgroup(H: FgAbGroup, rows) -> Subgroup:
    gens = parse_int_matrix(rows, H.ngens, "subgroup generators")
    return Subgroup.generated(H, gens)


def character_to_json(eta: TorsionCharacter) -> list[str]:
    return [rational_to_json(v) for v in eta.values]


def parse_character(H: FgAbGroup, vals) -> TorsionCharacter:
    if not isinstance(vals, list):
        raise InputError("a character is a list of rationals")
    return TorsionCharacter(H, [parse_rational(v) for v in vals])


def coset_to_json(c: TranslatedSubgroup) -> dict:
    return {"xi": [list(g) for g in c.xi.generators()], "eta": character_to_json(c.eta), "dim": c.dim}


def hom_to_json(nu: Homomorphism) -> list[list[int]]:
    return nu.rows()


def parse_hom(H: FgAbGroup, A: FgAbGroup, rows) -> Homomorphism:
    M = parse_int_matrix(rows, H.ngens, "homomorphism")
    if len(M) != A.ngens:
        raise DimensionError(f"homomorphism needs {A.ngens} rows, got {len(M)}")
    return Homomorphism(H, A, IntMatrix(M, H.ngens))


# ---------------------------------------------------------------------------
# varieties
# ---------------------------------------------------------------------------

def parse_arrangement(H: FgAbGroup, d: dict) -> Arrangement:
    comps = []
    for c in d.get("components", []):
        if not isinstance(c, dict) or "xi" not in c:
            raise InputError("arrangement components are {\"xi\": [[...]], \"eta\": [...]}")
        xi = parse_subgroup(H, c["xi"])
        eta = parse_character(H, c["eta"]) if "eta" in c else TorsionCharacter.trivial(H)
        comps.append(TranslatedSubgroup(xi, eta))
    points = [parse_character(H, p) for p in d.get("points", [])]
    deleted = [parse_subgroup(H, x) for x in d.get("deleted", [])]
    return Arrangement(H, comps, points, deleted)


def laurent_to_json(f: LaurentPolynomial) -> dict:
    return f.to_json()


def parse_laurent(H: FgAbGroup, d: dict) -> LaurentPolynomial:
    terms = d.get("terms")
    if not isinstance(terms, list):
        raise InputError("a Laurent polynomial is {\"terms\": [{\"exp\": [...], \"coeff\": \"c\"}]}")
    items = []
    for t in terms:
        exp = t.get("exp") if isinstance(t, dict) else None
        if not isinstance(exp, list) or len(exp) != H.ngens:
            raise DimensionError(f"term exponents must have length {H.ngens}")
        items.append(([_int(x, "exponent") for x in exp], parse_scalar(t.get("coeff", "1"))))
    return LaurentPolynomial(H, items)


def parse_complex(d: dict) -> SimplicialComplex:
    if not isinstance(d, dict) or "vertices" not in d:
        raise InputError("a simplicial complex is {\"vertices\": n, \"facets\": [[...]]}")
    facets = d.get("facets", [])
    return SimplicialComplex(_int(d["vertices"], "vertex count"),
                             [[_int(v, "vertex") for v in f] for f in facets])


@dataclass
class Problem:
    """A parsed problem file."""

    H: FgAbGroup | None
    A: FgAbGroup | None
    variety: Arrangement | Hypersurface | None
    variety_kind: str | None
    raw_variety: dict = field(default_factory=dict)
    presentation: Presentation | None = None
    queries: list = field(default_factory=list)

    def require_H(self) -> FgAbGroup:
        if self.H is None:
            raise InputError("the problem file does not define the group H")
        return self.H

    def require_A(self) -> FgAbGroup:
        if self.A is None:
            raise InputError("the problem file does not define the quotient A")
        return self.A

    def require_variety(self):
        if self.variety is None:
            raise InputError("the problem file does not define a variety")
        return self.variety


def parse_problem(data: dict, *, degree: int | None = None) -> Problem:
    if not isinstance(data, dict):
        raise InputError("a problem file is a JSON object")
    H = parse_group(data["group"]) if "group" in data else None
    A = parse_group(data["quotient"]) if "quotient" in data else None
    v = data.get("variety")
    variety = None
    kind = None
    if v is not None:
        if not isinstance(v, dict) or "type" not in v:
            raise InputError("variety must be an object with a \"type\" field")
        kind = v["type"]
        if kind == "arrangement":
            if H is None:
                raise InputError("arrangements need the group H")
            variety = parse_arrangement(H, v)
        elif kind == "hypersurface":
            if H is None:
                raise InputError("hypersurfaces need the group H")
            variety = Hypersurface(parse_laurent(H, v), tuple(parse_character(H, p) for p in v.get("points", [])))
        elif kind == "toric":
            L = parse_complex(v.get("complex", v))
            i = degree if degree is not None else _int(v.get("degree", 1), "degree")
            variety = toric_char_variety(L, i)
            if H is not None and H != variety.parent:
                raise DimensionError("group H does not match the vertex count")
            H = variety.parent
        elif kind == "brieskorn":
            ex = [_int(a, "exponent") for a in v.get("exponents", [])]
            tors = v.get("torsion")
            Hb = brieskorn_group(ex, [_int(t, "torsion factor") for t in tors] if tors is not None else None)
            if H is not None and H != Hb:
                raise DimensionError("group H does not match the Brieskorn invariants")
            H = Hb
            hs = v.get("h_elements")
            trans = [parse_character(H, h) for h in hs] if hs is not None else None
            variety = brieskorn_v1(ex, H, trans)
        else:
            raise InputError(f"unknown variety type {kind!r}")
    pres = None
    p = data.get("presentation")
    if p is not None:
        pres = Presentation(_int(p.get("generators"), "generator count"), list(p.get("relators", [])))
    queries = data.get("queries", [])
    if not isinstance(queries, list):
        raise InputError("queries must be a list")
    return Problem(H, A, variety, kind, v or {}, pres, queries)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def constituent_to_json(c: Constituent) -> dict:
    out = {"kind": c.kind, "xi": subgroup_to_json(c.xi)}
    if c.witness_eta is not None:
        out["witness_eta"] = character_to_json(c.witness_eta)
    return out


def report_to_json(r: ObstructionReport) -> dict:
    return {
        "H": group_to_json(r.H),
        "A": group_to_json(r.A),
        "mode": r.mode,
        "exact": r.exact,
        "constant": r.constant,
        "constituents": [constituent_to_json(c) for c in r.constituents],
        "notes": list(r.notes),
    }


def probe_to_json(p: FiberProbe) -> dict:
    return {
        "nu_bar_in_omega": p.nu_bar_in_omega,
        "fiber_size": p.fiber_size,
        "in_omega_count": p.in_omega_count,
        "singular": p.singular,
        "members": [hom_to_json(m) for m in p.members],
        "non_members": [hom_to_json(m) for m in p.non_members],
    }


def diagnosis_to_json(d: Diagnosis) -> dict:
    return {"verdict": d.verdict, "reason": d.reason}


def arrangement_to_json(W: Arrangement) -> dict:
    return {
        "type": "arrangement",
        "components": [coset_to_json(c) for c in W.components],
        "points": [character_to_json(p) for p in W.points],
        "deleted": [[list(g) for g in x.generators()] for x in W.deleted],
    }
