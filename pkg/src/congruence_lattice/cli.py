"""Command-line front end: thin JSON adapters over the library operations.

Output is deterministic: keys sorted, set-valued results sorted, integers
beyond 2^53-1 rendered as decimal strings.  Exit codes: 0 success, 1 for
flagged domain negatives (e.g. --fail-on-infeasible), 2 for usage errors
including malformed JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import antichain, crt, filter_lab, geometry, lattice, oracles
from .periodic_sets import PeriodicSet

JSON_INT_MAX = 2**53 - 1

# subcommand -> the one library operation it exposes
DISPATCH = {
    ("crt", "solve"): "crt.solve_system",
    ("crt", "stream"): "crt.FeasibilityStream",
    ("crt", "classify"): "crt.classify_prime_support",
    ("geom", "expand"): "geometry.expand",
    ("geom", "check"): "geometry.is_geometric",
    ("geom", "enum"): "geometry.enumerate_geometric",
    ("geom", "root"): "geometry.primitive_root",
    ("geom", "order"): "geometry.multiplicative_order",
    ("geom", "dlog"): "geometry.discrete_log",
    ("geom", "offsets"): "geometry.exponent_offsets",
    ("geom", "structure"): "geometry.structure_check",
    ("geom", "prime-in-class"): "geometry.prime_in_progression",
    ("geom", "witnesses"): "geometry.witness_class_set",
    ("lattice", "up"): "lattice.up_closure",
    ("lattice", "down"): "lattice.down_closure",
    ("lattice", "is-antichain"): "lattice.is_antichain",
    ("lattice", "is-convex"): "lattice.is_convex",
    ("lattice", "hull"): "lattice.convex_hull",
    ("lattice", "omega"): "lattice.omega",
    ("lattice", "omega-bound"): "lattice.omega_lower_bound",
    ("lattice", "levels"): "lattice.level_members",
    ("lattice", "is-upward"): "lattice.is_upward_closed",
    ("antichain", "depths"): "antichain.first_nonzero_depths",
    ("antichain", "build"): "antichain.build",
    ("antichain", "verify"): "antichain.verify",
    ("filter", "fip"): "filter_lab.has_fip",
    ("filter", "extend"): "filter_lab.extend",
    ("filter", "residues"): "filter_lab.feasible_residues",
    ("filter", "congruent"): "filter_lab.congruent_mod",
    ("filter", "divides"): "filter_lab.divides_check",
    ("filter", "nmax"): "filter_lab.nmax_witness",
    ("oracle", "run"): "oracles.run_suite",
}


class UsageError(Exception):
    pass


def _jsonable(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > JSON_INT_MAX else value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return [_jsonable(v) for v in sorted(value)]
    return value


def _emit(payload, pretty: bool):
    if pretty:
        text = json.dumps(_jsonable(payload), sort_keys=True, indent=2)
    else:
        text = json.dumps(_jsonable(payload), sort_keys=True, separators=(",", ":"))
    print(text)


def _as_int(value, what):
    if isinstance(value, bool):
        raise UsageError(f"{what}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise UsageError(f"{what}: expected an integer, got {value!r}") from None
    raise UsageError(f"{what}: expected an integer, got {value!r}")


def _int_list(text, what="list"):
    try:
        return [int(part) for part in str(text).split(",") if part != ""]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}") from None


def _load_json(source, what):
    """Parse inline JSON, or read it from a file path."""
    text = source
    if not source.lstrip().startswith(("[", "{", '"')) and os.path.exists(source):
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: invalid JSON ({exc})") from None


def _parse_congruences(text):
    data = _load_json(text, "congruence list")
    if not isinstance(data, list):
        raise UsageError("congruence list: expected a JSON array")
    out = []
    for i, item in enumerate(data):
        if not isinstance(item, dict):
            raise UsageError(f"congruence {i}: expected an object")
        for key in ("m", "a"):
            if key not in item:
                raise UsageError(f'congruence {i}: missing field "{key}"')
        m = _as_int(item["m"], f'congruence {i}: field "m"')
        a = _as_int(item["a"], f'congruence {i}: field "a"')
        if m < 1:
            raise UsageError(f'congruence {i}: field "m" must be >= 1, got {m}')
        out.append(crt.Congruence(m, a))
    return out


def _parse_periodic_set(data, what):
    if not isinstance(data, dict):
        raise UsageError(f"{what}: expected a JSON object")
    try:
        return PeriodicSet.from_json(data)
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _parse_base(source, what):
    data = _load_json(source, what)
    if not isinstance(data, list):
        raise UsageError(f"{what}: expected a JSON array of periodic sets")
    return [_parse_periodic_set(item, f"{what}[{i}]") for i, item in enumerate(data)]


def _parse_filter_base(source, what):
    members = _parse_base(source, what)
    try:
        return filter_lab.FilterBase(tuple(members))
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _parse_spec(source):
    data = _load_json(source, "antichain spec")
    try:
        return antichain.AntichainSpec.from_json(data)
    except ValueError as exc:
        raise UsageError(f"antichain spec: {exc}") from None


def _descriptor_json(d):
    return {"p": d.p, "s": d.seed, "r": d.ratio}


# -- handlers ------------------------------------------------------------------


def _cmd_crt_solve(args):
    sol = crt.solve_system(_parse_congruences(args.system))
    if sol is None:
        return {"infeasible": True}, (1 if args.fail_on_infeasible else 0)
    return {"M": sol.modulus, "x0": sol.residue}, 0


def _cmd_crt_stream(args):
    stream = crt.FeasibilityStream()
    states = []
    for c in _parse_congruences(args.system):
        state = stream.push(c)
        states.append({"infeasible": True} if state is None else {"M": state.modulus, "x0": state.residue})
    final = states[-1] if states else {"M": 1, "x0": 0}
    return {"states": states, "final": final}, 0


def _cmd_crt_classify(args):
    data = _load_json(args.table, "residue chain table")
    if not isinstance(data, dict):
        raise UsageError("residue chain table: expected a JSON object keyed by primes")
    table = {}
    for key, chain in data.items():
        p = _as_int(key, f'table key "{key}"')
        if not isinstance(chain, list):
            raise UsageError(f'table entry "{key}": expected an array of residues')
        table[p] = [_as_int(r, f'table entry "{key}"') for r in chain]
    result = {}
    for p, cls in crt.classify_prime_support(table).items():
        if isinstance(cls, crt.ZeroToDepth):
            result[str(p)] = {"kind": "zero_to_depth", "depth": cls.depth}
        else:
            result[str(p)] = {"kind": "nonzero", "first_nonzero": cls.first_nonzero}
    return result, 0


def _cmd_geom_expand(args):
    d = geometry.GeometricDescriptor(args.p, args.s, args.r)
    return {"p": args.p, "s": args.s, "r": args.r, "set": sorted(geometry.expand(d))}, 0


def _cmd_geom_check(args):
    residues = _int_list(args.set, "--set")
    d = geometry.is_geometric(args.p, residues)
    if d is None:
        return {"geometric": False}, 0
    return {"geometric": True, "descriptor": _descriptor_json(d)}, 0


def _cmd_geom_enum(args):
    family = geometry.enumerate_geometric(args.p)
    return {"p": args.p, "sets": sorted([sorted(s) for s in family])}, 0


def _cmd_geom_root(args):
    return {"p": args.p, "primitive_root": geometry.primitive_root(args.p)}, 0


def _cmd_geom_order(args):
    return {"order": geometry.multiplicative_order(args.p, args.a)}, 0


def _cmd_geom_dlog(args):
    k = geometry.discrete_log(args.p, args.base, args.x)
    if k is None:
        return {"no_solution": True}, 0
    return {"k": k}, 0


def _cmd_geom_offsets(args):
    off = geometry.exponent_offsets(args.p, _int_list(args.set, "--set"))
    return {"base_exponent": off.base_exponent, "offsets": list(off.offsets)}, 0


def _cmd_geom_structure(args):
    rep = geometry.structure_check(args.p, _int_list(args.set, "--set"))
    return {
        "gcd_closed": rep.gcd_closed,
        "multiples_closed": rep.multiples_closed,
        "arithmetic_progression": rep.arithmetic_progression,
        "all_hold": rep.all_hold,
    }, 0


def _cmd_geom_prime_in_class(args):
    return {"prime": geometry.prime_in_progression(args.m, args.r)}, 0


def _cmd_geom_witnesses(args):
    return {"values": geometry.witness_class_set(args.p, args.s, args.r, args.n)}, 0


def _cmd_lattice_up(args):
    return lattice.up_closure(_int_list(args.elements, "elements")).to_json(), 0


def _cmd_lattice_down(args):
    return {"divisors": lattice.down_closure(_int_list(args.elements, "elements"))}, 0


def _cmd_lattice_is_antichain(args):
    return {"antichain": lattice.is_antichain(_int_list(args.elements, "elements"))}, 0


def _cmd_lattice_is_convex(args):
    return {"convex": lattice.is_convex(_int_list(args.elements, "elements"))}, 0


def _cmd_lattice_hull(args):
    return {"hull": lattice.convex_hull(_int_list(args.elements, "elements"))}, 0


def _cmd_lattice_omega(args):
    return {"omega": lattice.omega(args.n, trial_budget=args.budget)}, 0


def _cmd_lattice_omega_bound(args):
    primes = _int_list(args.primes, "--primes")
    return {"lower_bound": lattice.omega_lower_bound(args.n, primes)}, 0


def _cmd_lattice_levels(args):
    return {"members": lattice.level_members(args.level, args.bound)}, 0


def _cmd_lattice_is_upward(args):
    s = _parse_periodic_set(_load_json(args.set, "--set"), "--set")
    return {"upward_closed": lattice.is_upward_closed(s)}, 0


def _cmd_antichain_depths(args):
    spec = _parse_spec(args.spec)
    depths = antichain.first_nonzero_depths(spec)
    return {str(p): d for p, d in zip(spec.chain_primes, depths)}, 0


def _cmd_antichain_build(args):
    spec = _parse_spec(args.spec)
    values = antichain.build(spec, args.n, substitution=args.substitution)
    return [str(v) for v in values], 0


def _cmd_antichain_verify(args):
    spec = _parse_spec(args.spec)
    data = _load_json(args.prefix, "--prefix")
    if not isinstance(data, list):
        raise UsageError("--prefix: expected a JSON array of integers")
    values = [_as_int(v, f"--prefix[{i}]") for i, v in enumerate(data)]
    report = antichain.verify(values, spec, substitution=args.substitution)
    return report.to_json(), 0


def _cmd_filter_fip(args):
    members = _parse_base(args.base, "--base")
    return {"fip": filter_lab.has_fip(members)}, 0


def _cmd_filter_extend(args):
    base = _parse_filter_base(args.base, "--base")
    s = _parse_periodic_set(_load_json(args.set, "--set"), "--set")
    extended = filter_lab.extend(base, s)
    if extended is None:
        return {"inconsistent": True}, 0
    return {"members": [m.to_json() for m in extended.members]}, 0


def _cmd_filter_residues(args):
    base = _parse_filter_base(args.base, "--base")
    return {"residues": sorted(filter_lab.feasible_residues(base, args.m))}, 0


def _cmd_filter_congruent(args):
    left = _parse_filter_base(args.left, "--left")
    right = _parse_filter_base(args.right, "--right")
    verdict = filter_lab.congruent_mod(left, right, args.m)
    return {"verdict": verdict.value}, 0


def _cmd_filter_divides(args):
    left = _parse_filter_base(args.left, "--left")
    right = _parse_filter_base(args.right, "--right")
    report = filter_lab.divides_check(left, right)
    payload = {"status": report.status.value}
    if report.witness is not None:
        payload["witness"] = report.witness.to_json()
    return payload, 0


def _cmd_filter_nmax(args):
    forbidden = _int_list(args.forbid, "--forbid") if args.forbid else []
    pool = _int_list(args.pool, "--pool")
    witness = filter_lab.nmax_witness(args.m, args.r, forbidden, pool)
    return {"witness": witness}, 0


def _cmd_oracle_run(args):
    seed = args.seed
    if seed is None:
        env = os.environ.get("CONGRUENCE_LATTICE_SEED")
        if env is not None:
            seed = _as_int(env, "CONGRUENCE_LATTICE_SEED")
        else:
            seed = oracles.DEFAULT_SEED
    report = oracles.run_suite(args.suite, seed=seed, budget_s=args.budget, cases=args.cases)
    return report, (1 if report["mismatches"] else 0)


# -- parser --------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="conlat",
        description="Exact congruence, residue-geometry, divisibility and filter-base tools",
    )
    parser.add_argument("--output", choices=("json", "pretty"), default="json")
    groups = parser.add_subparsers(dest="group", metavar="GROUP")

    crt_p = groups.add_parser("crt", help="congruence systems").add_subparsers(dest="command")
    p = crt_p.add_parser("solve", help="solve a congruence system")
    p.add_argument("system", help='JSON array like [{"m":3,"a":2},{"m":5,"a":3}]')
    p.add_argument("--fail-on-infeasible", action="store_true")
    p.set_defaults(handler=_cmd_crt_solve)
    p = crt_p.add_parser("stream", help="push congruences one at a time")
    p.add_argument("system")
    p.set_defaults(handler=_cmd_crt_stream)
    p = crt_p.add_parser("classify", help="classify primes of a residue chain table")
    p.add_argument("table", help='JSON object like {"2":[0,0,0],"3":[1,4,13]}')
    p.set_defaults(handler=_cmd_crt_classify)

    geom_p = groups.add_parser("geom", help="geometric residue sets").add_subparsers(dest="command")
    p = geom_p.add_parser("expand")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.set_defaults(handler=_cmd_geom_expand)
    p = geom_p.add_parser("check")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--set", required=True, help="comma-separated residues")
    p.set_defaults(handler=_cmd_geom_check)
    p = geom_p.add_parser("enum")
    p.add_argument("-p", type=int, required=True)
    p.set_defaults(handler=_cmd_geom_enum)
    p = geom_p.add_parser("root")
    p.add_argument("-p", type=int, required=True)
    p.set_defaults(handler=_cmd_geom_root)
    p = geom_p.add_parser("order")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-a", type=int, required=True)
    p.set_defaults(handler=_cmd_geom_order)
    p = geom_p.add_parser("dlog")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("-x", type=int, required=True)
    p.set_defaults(handler=_cmd_geom_dlog)
    p = geom_p.add_parser("offsets")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(handler=_cmd_geom_offsets)
    p = geom_p.add_parser("structure")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(handler=_cmd_geom_structure)
    p = geom_p.add_parser("prime-in-class")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.set_defaults(handler=_cmd_geom_prime_in_class)
    p = geom_p.add_parser("witnesses")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(handler=_cmd_geom_witnesses)

    lat_p = groups.add_parser("lattice", help="divisibility order").add_subparsers(dest="command")
    for name, handler in (
        ("up", _cmd_lattice_up),
        ("down", _cmd_lattice_down),
        ("is-antichain", _cmd_lattice_is_antichain),
        ("is-convex", _cmd_lattice_is_convex),
        ("hull", _cmd_lattice_hull),
    ):
        p = lat_p.add_parser(name)
        p.add_argument("elements", help="comma-separated positive integers")
        p.set_defaults(handler=handler)
    p = lat_p.add_parser("omega")
    p.add_argument("n", type=int)
    p.add_argument("--budget", type=int, default=lattice.DEFAULT_TRIAL_BUDGET)
    p.set_defaults(handler=_cmd_lattice_omega)
    p = lat_p.add_parser("omega-bound")
    p.add_argument("n", type=int)
    p.add_argument("--primes", required=True)
    p.set_defaults(handler=_cmd_lattice_omega_bound)
    p = lat_p.add_parser("levels")
    p.add_argument("-l", "--level", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(handler=_cmd_lattice_levels)
    p = lat_p.add_parser("is-upward")
    p.add_argument("--set", required=True, help="periodic set JSON")
    p.set_defaults(handler=_cmd_lattice_is_upward)

    anti_p = groups.add_parser("antichain", help="antichain construction").add_subparsers(dest="command")
    p = anti_p.add_parser("depths")
    p.add_argument("--spec", required=True)
    p.set_defaults(handler=_cmd_antichain_depths)
    p = anti_p.add_parser("build")
    p.add_argument("--spec", required=True, help="spec JSON (inline or file path)")
    p.add_argument("-n", type=int, required=True, help="index of the last element")
    p.add_argument("--substitution", choices=antichain.SUBSTITUTION_MODES, default="safe")
    p.set_defaults(handler=_cmd_antichain_build)
    p = anti_p.add_parser("verify")
    p.add_argument("--spec", required=True)
    p.add_argument("--prefix", required=True, help="JSON array of elements")
    p.add_argument("--substitution", choices=antichain.SUBSTITUTION_MODES, default="safe")
    p.set_defaults(handler=_cmd_antichain_verify)

    fil_p = groups.add_parser("filter", help="filter bases").add_subparsers(dest="command")
    p = fil_p.add_parser("fip")
    p.add_argument("--base", required=True, help="JSON array of periodic sets (inline or file)")
    p.set_defaults(handler=_cmd_filter_fip)
    p = fil_p.add_parser("extend")
    p.add_argument("--base", required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(handler=_cmd_filter_extend)
    p = fil_p.add_parser("residues")
    p.add_argument("--base", required=True)
    p.add_argument("-m", type=int, required=True)
    p.set_defaults(handler=_cmd_filter_residues)
    p = fil_p.add_parser("congruent")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("-m", type=int, required=True)
    p.set_defaults(handler=_cmd_filter_congruent)
    p = fil_p.add_parser("divides")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(handler=_cmd_filter_divides)
    p = fil_p.add_parser("nmax")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--forbid", default="")
    p.add_argument("--pool", required=True)
    p.set_defaults(handler=_cmd_filter_nmax)

    orc_p = groups.add_parser("oracle", help="brute-force comparison suites").add_subparsers(dest="command")
    p = orc_p.add_parser("run")
    p.add_argument("suite", choices=sorted(oracles.SUITES))
    p.add_argument("--seed", type=int, default=None, help="defaults to $CONGRUENCE_LATTICE_SEED or 42")
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--budget", type=float, default=None, help="wall-clock budget in seconds")
    p.set_defaults(handler=_cmd_oracle_run)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = getattr(args, "handler", None)
    if handler is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        payload, code = handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(payload, args.output == "pretty")
    return code


if __name__ == "__main__":
    sys.exit(main())
