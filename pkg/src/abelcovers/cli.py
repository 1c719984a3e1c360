"""Command-line front end.

Usage: ``abelcovers COMMAND PROBLEM.json [options]``.  Every command accepts
``--json`` (canonical JSON on stdout) and ``--verify`` (recompute with the
independent oracles and include the comparison).  Exit status: 0 success,
1 input error, 2 bound exceeded, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import jumploci as jl
from . import oracle
from .characters import Arrangement
from .errors import BoundExceeded, InputError, InvariantViolation
from .groups import (
    Homomorphism,
    epimorphism_classes,
    fiber_representatives,
    gamma_count,
)
from .laurent import LaurentPolynomial, fox_alexander_matrix, fox_identity_holds, minors_gcd
from .serialize import (
    Problem,
    arrangement_to_json,
    character_to_json,
    coset_to_json,
    diagnosis_to_json,
    dumps,
    group_to_json,
    hom_to_json,
    lattice_to_json,
    laurent_to_json,
    parse_hom,
    parse_int_matrix,
    parse_problem,
    probe_to_json,
    report_to_json,
    subgroup_to_json,
)
from .spaces import brieskorn_invariants

EXIT_OK, EXIT_INPUT, EXIT_BOUND, EXIT_INVARIANT = 0, 1, 2, 3

Result = tuple[dict, list[str]]


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _matrix_arg(text: str | list, what: str) -> list[list[int]]:
    if isinstance(text, list):
        data = text
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{what} must be a JSON matrix such as [[1,0],[0,1]]") from exc
    if data and not isinstance(data[0], list):
        data = [data]
    return parse_int_matrix(data, None, what)


def _nu_bar(P: Problem, rows) -> Homomorphism:
    H, A = P.require_H(), P.require_A()
    M = _matrix_arg(rows, "nu-bar")
    return parse_hom(H, A.free_part(), M)


def _arrangement(P: Problem) -> Arrangement:
    W = P.require_variety()
    if not isinstance(W, Arrangement):
        raise InputError("this command needs an arrangement variety")
    return W


def _xi_rows(xs) -> list[str]:
    return [f"  span{[list(g) for g in x.generators()]}" for x in xs] or ["  (none)"]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_xi(P: Problem, args) -> Result:
    W = _arrangement(P)
    xs = jl.xi_d(W, args.d, max_order=args.max_order)
    out = {"d": args.d, "xi": [subgroup_to_json(x) for x in xs]}
    text = [f"Xi_{args.d}(W): {len(xs)} subgroup(s)"] + _xi_rows(xs)
    if args.verify:
        if W.parent.torsion or W.parent.free_rank > 3:
            out["verify"] = {"skipped": "the Xi oracle needs a torsion-free group of rank at most 3"}
        else:
            ref = oracle.oracle_xi(W, args.d, args.index_bound)
            ok = [x.preimage for x in ref] == [x.preimage for x in xs]
            out["verify"] = {"oracle": [subgroup_to_json(x) for x in ref], "agree": ok}
            text.append(f"oracle agreement: {ok}")
            if not ok:
                raise InvariantViolation("Xi oracle disagrees")
    return out, text


def cmd_tau(P: Problem, args) -> Result:
    W = P.require_variety()
    if isinstance(W, jl.Hypersurface):
        if args.d != 1:
            raise InputError("only tau_1 is available for hypersurfaces")
        from .laurent import admissible_tau1
        Ls = admissible_tau1(W.f, max_support=args.max_support)
    else:
        Ls = jl.tau_d(W, args.d, max_order=args.max_order)
    out = {"d": args.d, "tau": [lattice_to_json(L) for L in Ls]}
    text = [f"tau_{args.d}(W): {len(Ls)} lattice(s)"] + [f"  span{[list(b) for b in L.basis]}" for L in Ls]
    return out, text


def cmd_gamma(P: Problem, args) -> Result:
    H, A = P.require_H(), P.require_A()
    n = gamma_count(H, A)
    out = {"H": group_to_json(H), "A": group_to_json(A), "count": n}
    text = [f"|Gamma({H}, {A})| fiber count = {n}"]
    if args.verify:
        ref = oracle.oracle_gamma_count(H, A)
        out["verify"] = {"oracle": ref, "agree": ref == n}
        text.append(f"oracle count {ref}: {'agree' if ref == n else 'DISAGREE'}")
        if ref != n:
            raise InvariantViolation("gamma count disagrees with the oracle")
    return out, text


def cmd_fiber(P: Problem, args) -> Result:
    A = P.require_A()
    nb = _nu_bar(P, args.nu_bar)
    reps = fiber_representatives(nb, A)
    out = {"nu_bar": hom_to_json(nb), "fiber": [hom_to_json(r) for r in reps], "size": len(reps)}
    text = [f"fiber over {hom_to_json(nb)}: {len(reps)} class(es)"] + [f"  {hom_to_json(r)}" for r in reps]
    if args.verify:
        expected = gamma_count(P.require_H(), A)
        distinct = all(not oracle.brute_force_equivalent(a, b)
                       for i, a in enumerate(reps) for b in reps[i + 1:])
        out["verify"] = {"expected_size": expected, "pairwise_inequivalent": distinct}
        text.append(f"expected size {expected}; pairwise inequivalent: {distinct}")
        if expected != len(reps) or not distinct:
            raise InvariantViolation("fiber enumeration failed verification")
    return out, text


def _member_one(P: Problem, nu: Homomorphism, args) -> Result:
    W = P.require_variety()
    wit = jl.upsilon_witness(nu, W, max_order=args.max_order)
    in_omega = wit is None
    rec: dict = {"nu": hom_to_json(nu), "omega": in_omega, "upsilon": not in_omega}
    if wit is not None:
        w = {"kappa": character_to_json(wit.kappa)}
        if wit.coset is not None:
            w["coset"] = coset_to_json(wit.coset)
            w["intersection_dim"] = wit.dim
        if wit.restricted is not None:
            w["restricted"] = laurent_to_json(wit.restricted)
        rec["witness"] = w
    u = jl.u_set_member(nu, W, max_order=args.max_order)
    rec["u_set"] = {"member": u is not None, "xi": subgroup_to_json(u) if u is not None else None}
    comps = []
    if isinstance(W, Arrangement):
        for c in W.translated_components(max_order=args.max_order):
            comps.append({"coset": coset_to_json(c),
                          "sigma": jl.sigma_member(nu, c.xi),
                          "u": jl.u_member(nu, c.xi),
                          "theta": jl.theta_member(nu, c.xi, max_order=args.max_order)})
    rec["components"] = comps
    line = f"[nu] = {hom_to_json(nu)}: " + ("in Omega" if in_omega else "NOT in Omega")
    text = [line]
    if wit is not None:
        if wit.coset is not None:
            text.append(f"  witness: component of im(nu^) selected by kappa = {character_to_json(wit.kappa)} "
                        f"meets coset eta={character_to_json(wit.coset.eta)} V(span{[list(g) for g in wit.coset.xi.generators()]}) "
                        f"in dimension {wit.dim}")
        else:
            text.append(f"  witness: restriction {wit.restricted!r} has a positive-dimensional zero set")
    if u is not None:
        text.append(f"  in U_A(W) via xi = span{[list(g) for g in u.generators()]}")
    if args.verify and isinstance(W, Arrangement):
        closed = jl.omega_closed_form(nu, W, max_order=args.max_order)
        rec["verify"] = {"closed_form": closed, "agree": closed == in_omega}
        text.append(f"  closed form agrees: {closed == in_omega}")
    return rec, text


def cmd_member(P: Problem, args) -> Result:
    H, A = P.require_H(), P.require_A()
    M = _matrix_arg(args.nu, "nu")
    if len(M) == A.free_rank and A.torsion:
        nb = parse_hom(H, A.free_part(), M)
        noms = [_member_one(P, nu, args) for nu in fiber_representatives(nb, A)]
        recs = [r for r, _ in noms]
        text = [f"nu-bar {hom_to_json(nb)} given; checking its fiber of {len(recs)} class(es)"]
        for _, t in noms:
            text += t
        return {"nu_bar": hom_to_json(nb), "fiber": recs}, text
    rec, text = _member_one(P, parse_hom(H, A, M), args)
    return rec, text


def cmd_describe(P: Problem, args) -> Result:
    W, A = P.require_variety(), P.require_A()
    rep = jl.omega_describe(W, A, max_order=args.max_order)
    out = report_to_json(rep)
    text = [f"Omega_A with A = {A}: mode {rep.mode}, constant c = {rep.constant}",
            "Omega = Gamma(H,A) minus the union of:" if rep.exact else
            "Omega is contained in Gamma(H,A) minus the union of:"]
    for c in rep.constituents:
        text.append(f"  {c.kind}(span{[list(g) for g in c.xi.generators()]})")
    if not rep.constituents:
        text.append("  (nothing)")
    text += [f"note: {n}" for n in rep.notes]
    if args.verify:
        sample = epimorphism_classes(rep.H, A, args.sample_bound)[: args.max_samples]
        agr = oracle.oracle_omega_agreement(W, A, sample)
        out["verify"] = {"samples": len(agr.records), "in_omega": agr.count_in_omega(),
                         "disagreements": [hom_to_json(r.nu) for r in agr.disagreements]}
        text.append(f"oracle: {len(agr.records)} sampled classes, {len(agr.disagreements)} disagreement(s)")
        if not agr.ok:
            raise InvariantViolation("Omega descriptions disagree on sampled classes")
    return out, text


def cmd_sigma_probe(P: Problem, args) -> Result:
    W, A = P.require_variety(), P.require_A()
    nb = _nu_bar(P, args.nu_bar)
    probe = jl.singular_set_probe(W, A, nb, max_order=args.max_order)
    out = probe_to_json(probe)
    out["nu_bar"] = hom_to_json(nb)
    text = [f"nu-bar {hom_to_json(nb)}: in Omega_Abar = {probe.nu_bar_in_omega}",
            f"fiber size {probe.fiber_size}, in Omega_A {probe.in_omega_count}",
            f"singular: {probe.singular}"]
    return out, text


def cmd_diagnose(P: Problem, args) -> Result:
    W, A = _arrangement(P), P.require_A()
    d = jl.pullback_diagnostics(W, A, max_order=args.max_order)
    return diagnosis_to_json(d), [f"{d.verdict}: {d.reason}"]


def cmd_toric(P: Problem, args) -> Result:
    if P.variety_kind != "toric":
        raise InputError("the toric command needs a variety of type \"toric\"")
    i = args.i
    W = P.variety
    out = {"degree": i, "arrangement": arrangement_to_json(W)}
    text = [f"V^{i}(T_L): {len(W.components)} coordinate subtorus component(s), {len(W.points)} point(s)"]
    text += [f"  V(span{[list(g) for g in c.xi.generators()]})" for c in W.components]
    if P.A is not None:
        rep = jl.omega_describe(W, P.A)
        diag = jl.pullback_diagnostics(W, P.A)
        out["omega"] = report_to_json(rep)
        out["diagnosis"] = diagnosis_to_json(diag)
        text.append(f"Omega: {rep.mode}, {len(rep.constituents)} sigma constituent(s); {diag.verdict}")
    return out, text


def cmd_brieskorn(P: Problem, args) -> Result:
    if P.variety_kind != "brieskorn":
        raise InputError("the brieskorn command needs a variety of type \"brieskorn\"")
    data = brieskorn_invariants(P.raw_variety.get("exponents", []))
    W = P.variety
    out = {
        "exponents": list(data.exponents),
        "orbits": [list(o) for o in data.orbits],
        "genus": data.genus,
        "euler": str(data.euler),
        "torsion_order": data.torsion_order,
        "alpha": data.alpha,
        "H": group_to_json(W.parent),
        "arrangement": arrangement_to_json(W),
    }
    text = [f"Sigma{tuple(data.exponents)}: g = {data.genus}, e = {data.euler}, "
            f"|Tors H| = {data.torsion_order}, alpha = {data.alpha}, H = {W.parent}"]
    if P.A is not None:
        rep = jl.omega_describe(W, P.A)
        out["omega"] = report_to_json(rep)
        text.append(f"Omega_A ({P.A}): {rep.mode}, " +
                    ", ".join(f"{c.kind}(span{[list(g) for g in c.xi.generators()]})" for c in rep.constituents))
    return out, text


def cmd_fox(P: Problem, args) -> Result:
    if P.presentation is None:
        raise InputError("the fox command needs a \"presentation\"")
    pres = P.presentation
    H = pres.abelianization
    M = fox_alexander_matrix(pres)
    out: dict = {"H": group_to_json(H), "matrix": [[laurent_to_json(x) for x in row] for row in M]}
    text = [f"abelianization {H}", "Alexander matrix:"] + ["  " + " | ".join(repr(x) for x in row) for row in M]
    if H.torsion:
        Hf = H.free_part()
        n = H.free_rank
        proj = [[LaurentPolynomial(Hf, [(e[:n], c) for e, c in x.terms.items()]) for x in row] for row in M]
        g = minors_gcd(proj, Hf)
        out["gcd_over"] = "free quotient"
    else:
        g = minors_gcd(M, H)
        out["gcd_over"] = "H"
    out["minors_gcd"] = laurent_to_json(g)
    out["caveat"] = "describes V^1 only away from the trivial character"
    text.append(f"gcd of codimension-1 minors ({out['gcd_over']}): {g!r} (valid away from the trivial character)")
    if args.verify:
        ok = fox_identity_holds(pres, M)
        out["verify"] = {"fox_identity": ok}
        text.append(f"fundamental identity holds: {ok}")
        if not ok:
            raise InvariantViolation("fundamental Fox identity fails")
    return out, text


COMMANDS: dict[str, Callable[[Problem, argparse.Namespace], Result]] = {
    "xi": cmd_xi, "tau": cmd_tau, "gamma": cmd_gamma, "fiber": cmd_fiber,
    "member": cmd_member, "describe": cmd_describe, "sigma-probe": cmd_sigma_probe,
    "diagnose": cmd_diagnose, "toric": cmd_toric, "brieskorn": cmd_brieskorn, "fox": cmd_fox,
}

# payload keys of file queries mapped onto option names
_QUERY_KEYS = {"d": "d", "nu": "nu", "nu_bar": "nu_bar", "nu-bar": "nu_bar", "i": "i"}


def cmd_run(P: Problem, args) -> Result:
    results, text = [], []
    for q in P.queries:
        if not isinstance(q, dict) or q.get("kind") not in COMMANDS:
            raise InputError(f"bad query {q!r}")
        sub = argparse.Namespace(**vars(args))
        for k, v in q.items():
            if k in _QUERY_KEYS:
                setattr(sub, _QUERY_KEYS[k], v)
        payload, lines = COMMANDS[q["kind"]](P, sub)
        results.append({"kind": q["kind"], "result": payload})
        text += [f"== {q['kind']}"] + lines
    return {"results": results}, text


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abelcovers", description="Dwyer-Fried sets of abelian covers")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, *leading: str) -> argparse.ArgumentParser:
        s = sub.add_parser(name, help=help_)
        for arg in leading:
            s.add_argument(arg, choices=["count"])
        s.add_argument("file", help="problem file (JSON)")
        s.add_argument("--json", action="store_true", help="emit canonical JSON")
        s.add_argument("--verify", action="store_true", help="cross-check with the oracles")
        s.add_argument("--max-order", type=int, default=10_000, help="bound on determinant/torsion group orders")
        s.add_argument("--max-support", type=int, default=12, help="bound on Laurent support size")
        s.add_argument("--index-bound", type=int, default=16, help="index bound for the Xi oracle")
        s.add_argument("--sample-bound", type=int, default=1, help="entry bound for sampled classes in describe --verify")
        s.add_argument("--max-samples", type=int, default=400, help="cap on sampled classes in describe --verify")
        return s

    add("xi", "maximal translated subtori data Xi_d").add_argument("--d", type=int, required=True)
    add("tau", "dual lattices tau_d").add_argument("--d", type=int, required=True)
    add("gamma", "count Gamma(H/Abar, A/Abar)", "action")
    add("fiber", "fiber representatives over nu-bar").add_argument("--nu-bar", dest="nu_bar", required=True)
    add("member", "Omega membership of a class").add_argument("--nu", required=True)
    add("describe", "constituents of the complement of Omega")
    add("sigma-probe", "singular-set probe over nu-bar").add_argument("--nu-bar", dest="nu_bar", required=True)
    add("diagnose", "pullback diagnostics")
    add("toric", "characteristic variety of a toric complex").add_argument("--i", type=int, default=1)
    add("brieskorn", "Brieskorn manifold invariants and Omega")
    add("fox", "Alexander matrix via Fox calculus")
    add("run", "run the queries listed in the file")
    return p


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        try:
            with open(args.file, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.file} is not valid JSON: {exc}") from exc
        degree = getattr(args, "i", None) if args.command == "toric" else None
        P = parse_problem(data, degree=degree)
        handler = cmd_run if args.command == "run" else COMMANDS[args.command]
        payload, text = handler(P, args)
    except BoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, KeyError, TypeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(dumps(payload), file=stdout)
    else:
        print("\n".join(text), file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
