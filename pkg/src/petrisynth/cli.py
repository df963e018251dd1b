"""Command-line front door.

One verb per pipeline stage: check/synth/rg/verify for the synthesis side,
repair/apply for modification search, hs/gen/map-fwd/map-back for the
hitting-set constructions.  Exit status encodes the decision: 0 positive,
1 negative (property fails, budget exhausted, cap hit, nothing to hit),
2 for unusable input of any kind.  Reports go to stdout; artifacts go to
--out when given, else stdout.
"""

from __future__ import annotations

import argparse
import sys

from .lts import parse_lts, serialize_lts
from .removal import apply_removal, parse_removal, serialize_removal
from .repair import NoneWithinBudget, RepairError, greedy_upper_bound, min_removal
from .reductions import (
    FAMILIES,
    NoHittingSet,
    brute_force_min_hitting_set,
    generate_instance,
    hitting_set_from_removal,
    parse_hitting_set,
    removal_from_hitting_set,
)
from .separation import PROPERTIES, Witness, check_property
from .synthesis import (
    CapExceeded,
    VerifyFailure,
    parse_net,
    reachability_graph,
    serialize_net,
    synthesized_net,
    verify_embedding,
    verify_language_simulation,
    verify_realization,
)

_VERIFIERS = {
    "embedding": verify_embedding,
    "language": verify_language_simulation,
    "realization": verify_realization,
}


def _positive_int(token: str) -> int:
    value = int(token)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {token}")
    return value


def _nonnegative_int(token: str) -> int:
    value = int(token)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {token}")
    return value


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _print_report(text: str) -> None:
    if text:
        print(text)


def cmd_check(args) -> int:
    lts = parse_lts(_read(args.file))
    result = check_property(lts, args.property, jobs=args.jobs, shrink=args.shrink)
    _print_report(result.render())
    return 0 if isinstance(result, Witness) else 1


def cmd_synth(args) -> int:
    lts = parse_lts(_read(args.file))
    result = check_property(lts, args.property, jobs=args.jobs, shrink=True)
    if not isinstance(result, Witness):
        _print_report(result.render())
        return 1
    _emit(serialize_net(synthesized_net(lts, result)), args.out)
    return 0


def cmd_rg(args) -> int:
    net = parse_net(_read(args.file))
    result = reachability_graph(net, args.cap)
    if isinstance(result, CapExceeded):
        print(f"cap exceeded: more than {result.cap} reachable markings")
        return 1
    _emit(serialize_lts(result), args.out)
    return 0


def cmd_verify(args) -> int:
    lts = parse_lts(_read(args.lts))
    net = parse_net(_read(args.net))
    outcome = _VERIFIERS[args.relation](lts, net)
    if isinstance(outcome, VerifyFailure):
        _print_report(outcome.render())
        return 1
    print("ok")
    return 0


def cmd_repair(args) -> int:
    lts = parse_lts(_read(args.file))
    if args.greedy:
        try:
            result = greedy_upper_bound(lts, args.mode, args.property, jobs=args.jobs)
        except RepairError as err:
            print(err)
            return 1
    else:
        if args.max_k is None:
            raise ValueError("--max-k is required unless --greedy is given")
        result = min_removal(lts, args.mode, args.property, args.max_k, jobs=args.jobs)
        if isinstance(result, NoneWithinBudget):
            print(result.render())
            return 1
    # the report goes to stdout; --out gets a removal file apply can read back
    print(result.render())
    if args.out:
        _emit(serialize_removal(result.removed), args.out)
    return 0


def cmd_apply(args) -> int:
    lts = parse_lts(_read(args.lts))
    removal = parse_removal(_read(args.removal))
    _emit(serialize_lts(apply_removal(lts, removal)), args.out)
    return 0


def cmd_hs(args) -> int:
    instance = parse_hitting_set(_read(args.file))
    try:
        chosen, size = brute_force_min_hitting_set(instance)
    except NoHittingSet as err:
        print(err)
        return 1
    print("hitting set:" + "".join(" " + element for element in chosen))
    print(f"size={size}")
    return 0


def cmd_gen(args) -> int:
    instance = parse_hitting_set(_read(args.file))
    lts, kappa = generate_instance(instance, args.family)
    _emit(serialize_lts(lts), args.out)
    print(f"kappa={kappa}")
    return 0


def cmd_map_fwd(args) -> int:
    instance = parse_hitting_set(_read(args.file))
    z = [token for token in args.z.split(",") if token]
    removal = removal_from_hitting_set(instance, z, args.family)
    _emit(serialize_removal(removal), args.out)
    return 0


def cmd_map_back(args) -> int:
    instance = parse_hitting_set(_read(args.file))
    removal = parse_removal(_read(args.removal))
    chosen = hitting_set_from_removal(instance, removal, args.family)
    print("hitting set:" + "".join(" " + element for element in chosen))
    print(f"size={len(chosen)}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="petrisynth",
                                     description="Petri net synthesis and LTS repair toolkit")
    verbs = parser.add_subparsers(dest="verb", required=True)

    check = verbs.add_parser("check", help="decide a separation property")
    check.add_argument("file")
    check.add_argument("--property", choices=PROPERTIES, required=True)
    check.add_argument("--shrink", action="store_true",
                       help="greedily reduce the witness before printing")
    check.add_argument("--jobs", type=_positive_int, default=1)
    check.set_defaults(run=cmd_check)

    synth = verbs.add_parser("synth", help="synthesize a net from a witness")
    synth.add_argument("file")
    synth.add_argument("--property", choices=PROPERTIES, default="both")
    synth.add_argument("--jobs", type=_positive_int, default=1)
    synth.add_argument("--out")
    synth.set_defaults(run=cmd_synth)

    rg = verbs.add_parser("rg", help="reachability graph of a net")
    rg.add_argument("file")
    rg.add_argument("--cap", type=_positive_int, default=10000)
    rg.add_argument("--out")
    rg.set_defaults(run=cmd_rg)

    verify = verbs.add_parser("verify", help="check a net against an LTS")
    verify.add_argument("lts")
    verify.add_argument("net")
    verify.add_argument("--relation", choices=sorted(_VERIFIERS), required=True)
    verify.set_defaults(run=cmd_verify)

    repair = verbs.add_parser("repair", help="search for a property-restoring removal")
    repair.add_argument("file")
    repair.add_argument("--mode", choices=("edge", "event", "state"), required=True)
    repair.add_argument("--property", choices=("embedding", "language", "realization"),
                        required=True)
    repair.add_argument("--max-k", type=_nonnegative_int)
    repair.add_argument("--greedy", action="store_true",
                        help="fast upper bound instead of the exact search")
    repair.add_argument("--jobs", type=_positive_int, default=1)
    repair.add_argument("--out")
    repair.set_defaults(run=cmd_repair)

    apply_ = verbs.add_parser("apply", help="apply a removal file to an LTS")
    apply_.add_argument("lts")
    apply_.add_argument("removal")
    apply_.add_argument("--out")
    apply_.set_defaults(run=cmd_apply)

    hs = verbs.add_parser("hs", help="brute-force minimum hitting set")
    hs.add_argument("file")
    hs.set_defaults(run=cmd_hs)

    gen = verbs.add_parser("gen", help="build a benchmark LTS from a hitting-set instance")
    gen.add_argument("file")
    gen.add_argument("--family", choices=FAMILIES, required=True)
    gen.add_argument("--out")
    gen.set_defaults(run=cmd_gen)

    map_fwd = verbs.add_parser("map-fwd", help="hitting set to removal set")
    map_fwd.add_argument("file")
    map_fwd.add_argument("--family", choices=FAMILIES, required=True)
    map_fwd.add_argument("--z", required=True, help="comma-separated universe elements")
    map_fwd.add_argument("--out")
    map_fwd.set_defaults(run=cmd_map_fwd)

    map_back = verbs.add_parser("map-back", help="removal set back to a hitting set")
    map_back.add_argument("file")
    map_back.add_argument("removal")
    map_back.add_argument("--family", choices=FAMILIES, required=True)
    map_back.set_defaults(run=cmd_map_back)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (ValueError, OSError) as err:
        print(err, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
