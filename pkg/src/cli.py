"""Command-line front end.

Output is ``key: value`` lines on stdout. Exit codes: 0 success, 1 a check
or verification failed, 2 bad input (parse, table, trace, stream), 3 an
exhaustive computation exceeded its cap, 4 evaluator or construction not
applicable to the subject.
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from .algebra import FiniteSemigroup, classify_monoid, classify_semigroup, load_semigroup
from .catalog import EXAMPLES, resolve_subject
from .config import get_settings
from .errors import OutOfOrderError
from .evaluators.registry import EVALUATOR_NAMES, build_evaluator
from .evaluators.trace import load_trace
from .foolingsets import CONSTRUCTIONS, build_named_fooling, verify_fooling_set
from .harness import (
    DEFAULT_PROFILE_ORDERS,
    PermutationKind,
    differential_campaign,
    growth_profile,
    parse_schedule,
    run_events,
)
from .langkit import SyntacticStructure
from .oracles import (
    check_fl_preservation,
    check_pumping_claim,
    check_sum_of_squares_lemma,
    one_way_classes,
    parse_domain,
)

logger = logging.getLogger(__name__)

Subject = FiniteSemigroup | SyntacticStructure


def emit(key: str, value) -> None:
    print(f"{key}: {value}")


def load_subject(args: argparse.Namespace) -> Subject:
    """The language or algebra named by --regex, --semigroup-file or --example."""
    return resolve_subject(
        regex=args.regex,
        alphabet=args.alphabet,
        table=load_semigroup(args.semigroup_file) if args.semigroup_file else None,
        example=args.example,
        view=args.view,
    )


def algebra_of(subject: Subject) -> FiniteSemigroup:
    return subject.algebra if isinstance(subject, SyntacticStructure) else subject


def add_subject_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--regex", help="Regular expression over --alphabet.")
    group.add_argument("--semigroup-file", type=Path, help="Multiplication table file.")
    group.add_argument("--example", choices=sorted(EXAMPLES), help="A built-in example language.")
    parser.add_argument("--alphabet", help="Letters of the alphabet, in naming order.")
    parser.add_argument(
        "--as",
        dest="view",
        choices=("monoid", "semigroup"),
        help="Study the syntactic monoid or semigroup (default: monoid when there is an identity).",
    )


def cmd_classify(args: argparse.Namespace) -> int:
    subject = load_subject(args)
    S = algebra_of(subject)
    report = classify_monoid(S) if S.is_monoid else classify_semigroup(S)
    emit("subject", report.subject)
    emit("size", S.size)
    emit("elements", " ".join(S.elements))
    emit("regime", report.headline(S))
    if report.witness is not None:
        emit("witness", f"{report.witness.equation} {report.witness.describe(S)} ({report.witness.values(S)})")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    subject = load_subject(args)
    trace = load_trace(args.trace)
    e = build_evaluator(args.evaluator, subject)
    events = trace.events(None if isinstance(subject, SyntacticStructure) else subject)
    answer, peak = run_events(e, trace.length, events)
    emit("evaluator", e.name)
    if isinstance(subject, SyntacticStructure):
        emit("verdict", "accept" if answer else "reject")
    else:
        emit("element", subject.name(answer))
    emit("max_state_bits", peak)
    return 0


def cmd_measure(args: argparse.Namespace) -> int:
    subject = load_subject(args)
    schedule = parse_schedule(args.n)
    orders = [PermutationKind(kind) for kind in args.order] if args.order else DEFAULT_PROFILE_ORDERS
    profile = growth_profile(
        lambda s: build_evaluator(args.evaluator, s),
        subject,
        schedule,
        orders=orders,
        words_per_n=args.words,
        seed=args.seed,
    )
    if args.csv:
        args.csv.write_text(profile.to_csv(), encoding="utf-8")
        emit("csv", args.csv)
    else:
        sys.stdout.write(profile.to_csv())
    emit("evaluator", profile.evaluator)
    emit("domain_first", profile.construction or "random")
    emit("model", profile.fitted_model)
    emit("fit_error", f"{profile.fit_error:.4f}")
    emit("summary", profile.summary())
    return 0


def cmd_campaign(args: argparse.Namespace) -> int:
    subject = load_subject(args)
    lengths = parse_schedule(args.n)
    result = differential_campaign(
        lambda s: build_evaluator(args.evaluator, s),
        subject,
        lengths,
        words_per_n=args.words,
        perms_per_word=args.perms,
        seed=args.seed,
        exhaustive_upto=args.exhaustive_upto,
    )
    emit("trials", result.trials)
    emit("result", "pass" if result.passed else "fail")
    if result.failure is not None:
        sys.stdout.write(result.failure.to_replay())
        if args.replay:
            result.failure.write_replay(args.replay)
            emit("replay", args.replay)
        return 1
    return 0


def cmd_fool(args: argparse.Namespace) -> int:
    F = build_named_fooling(args.construction, args.n)
    emit("construction", F.name)
    emit("words", F.size)
    emit("length", F.length)
    emit("domain", ",".join(map(str, sorted(F.domain))))
    emit("lower_bound_bits", F.lower_bound_bits)
    for i in range(min(F.size, args.show)):
        emit(f"word {i}", F.word(i).format(F.format_cell))
    if not args.verify:
        return 0
    result = verify_fooling_set(F, seed=args.seed)
    emit("pairs_checked", result.pairs_checked)
    emit("exhaustive", str(result.exhaustive).lower())
    emit("verified", "pass" if result.passed else "fail")
    if result.counterexample is not None:
        i, j = result.counterexample
        emit("counterexample", f"{i} {j}")
        return 1
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    check = args.check
    if check == "sum-of-squares":
        found = check_sum_of_squares_lemma(args.m_max)
        emit("m_max", args.m_max)
        return _report(found, lambda x: f"X={set(x[0])} I={set(x[1])}")

    if check == "lower-bound":
        n, domain, fallback = parse_domain(args.domain, args.n)
        if args.regex or args.semigroup_file or args.example:
            subject = load_subject(args)
        elif fallback is not None:
            subject = fallback
        else:
            raise ValueError("lower-bound needs a subject or a fooling:<construction>:<n> domain")
        classes = one_way_classes(subject, n, domain)
        bits = (classes - 1).bit_length()
        emit("n", n)
        emit("domain", ",".join(map(str, domain)))
        emit("classes", classes)
        emit("lower_bound_bits", bits)
        emit("bound", f">= {bits} bits")
        return 0

    S = algebra_of(load_subject(args))
    if check == "fl-preservation":
        found = check_fl_preservation(S, args.k, args.max_len)
    else:
        found = check_pumping_claim(S, trials=args.trials, seed=args.seed)
    return _report(found, lambda word: " ".join(S.name(x) for x in word))


def _report(found, describe) -> int:
    if found is None:
        emit("result", "pass")
        return 0
    emit("result", "fail")
    emit("counterexample", describe(found))
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ooo", description="Out-of-order evaluation of regular languages and finite semigroups.")
    parser.add_argument("--seed", type=int, default=None, help="Random seed (default from OOO_SEED, else 0).")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="INFO logging; twice for DEBUG.")
    commands = parser.add_subparsers(dest="command", required=True)

    classify = commands.add_parser("classify", help="Space regime of a language or algebra.")
    add_subject_arguments(classify)
    classify.set_defaults(func=cmd_classify)

    evaluate = commands.add_parser("eval", help="Run an evaluator on a stream trace.")
    add_subject_arguments(evaluate)
    evaluate.add_argument("--trace", type=Path, required=True, help="Trace file: 'n=N' then '<pos> <letter>' lines.")
    evaluate.add_argument("--evaluator", choices=EVALUATOR_NAMES, default="auto")
    evaluate.set_defaults(func=cmd_eval)

    measure = commands.add_parser("measure", help="State-size growth profile as CSV.")
    add_subject_arguments(measure)
    measure.add_argument("--evaluator", choices=EVALUATOR_NAMES, default="auto")
    measure.add_argument("--n", default="16:16384:x2", help="Length schedule, e.g. 16:16384:x2.")
    measure.add_argument("--words", type=int, default=2, help="Sampled words per length.")
    measure.add_argument(
        "--order", action="append", choices=[k.value for k in PermutationKind], help="Streaming order (repeatable)."
    )
    measure.add_argument("--csv", type=Path, help="Write the profile here instead of stdout.")
    measure.set_defaults(func=cmd_measure)

    campaign = commands.add_parser("campaign", help="Differential test against the reference evaluator.")
    add_subject_arguments(campaign)
    campaign.add_argument("--evaluator", choices=EVALUATOR_NAMES, default="auto")
    campaign.add_argument("--n", default="1,2,3,4,5,6,7,8,16", help="Lengths, e.g. 1:16:+1.")
    campaign.add_argument("--words", type=int, default=500)
    campaign.add_argument("--perms", type=int, default=5)
    campaign.add_argument("--exhaustive-upto", type=int, default=6)
    campaign.add_argument("--replay", type=Path, help="Write the first failure here.")
    campaign.set_defaults(func=cmd_campaign)

    fool = commands.add_parser("fool", help="Build (and verify) a fooling set.")
    fool.add_argument("--construction", choices=list(CONSTRUCTIONS), required=True)
    fool.add_argument("--n", type=int, required=True)
    fool.add_argument("--verify", action="store_true")
    fool.add_argument("--show", type=int, default=0, help="Print the first SHOW partial words.")
    fool.set_defaults(func=cmd_fool)

    oracle = commands.add_parser("oracle", help="Brute-force ground truths.")
    oracle.add_argument("check", choices=("lower-bound", "sum-of-squares", "fl-preservation", "pumping"))
    add_subject_arguments(oracle, required=False)
    oracle.add_argument("--n", type=int, help="Word length for lower-bound.")
    oracle.add_argument("--domain", default="", help="p1,p2,... or fooling:<construction>:<n>.")
    oracle.add_argument("--m-max", type=int, default=12)
    oracle.add_argument("--k", type=int, help="First-last parameter (default |M|).")
    oracle.add_argument("--max-len", type=int, default=8)
    oracle.add_argument("--trials", type=int)
    oracle.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    level = {0: settings.log_level, 1: "INFO"}.get(args.verbose, "DEBUG")
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if args.seed is None:
        args.seed = settings.seed
    needs_subject = getattr(args, "check", None) in ("fl-preservation", "pumping")
    if needs_subject and not (args.regex or args.semigroup_file or args.example):
        parser.error(f"{args.check} needs --regex, --semigroup-file or --example")
    try:
        return args.func(args)
    except OutOfOrderError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
