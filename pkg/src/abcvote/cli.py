"""Command-line front end.

Four subcommands: ``run`` executes a committee rule on an instance file
and prints the committee, welfare vector, and execution trace; ``check``
tests a committee against one axiom and prints PASS or FAIL plus a
witness; ``search`` hunts for counterexamples (a rule output violating
an axiom) over seeded random and small structured instances; ``repro``
re-derives the catalogue's frozen numbers and prints a desk-scale
property matrix.

All output is deterministic for a fixed command line: rationals render
as ``num/den`` in lowest terms (``/1`` omitted), committees as
comma-separated increasing 1-based indices, and ``--json`` emits the
same fields as machine-readable JSON.  Exit codes: 0 pass/success, 1
axiom failure or reproduction mismatch, 2 input error, 3 search budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from abcvote.axioms import (
    Deviation,
    PriceSystem,
    check_core_subject_to,
    check_ejr,
    check_pareto,
    check_pigou_dalton,
    check_pjr,
    check_priceable,
    find_core_deviation,
    minimal_core_lambda,
    validate_price_system,
    verify_deviation,
)
from abcvote.generators import fixture, gen_laminar, gen_random
from abcvote.laminar import (
    check_laminar,
    check_laminar_proportional,
    laminar_proportional_committees,
)
from abcvote.model import (
    Committee,
    ElectionInstance,
    ParseError,
    SearchBudgetExceeded,
    format_committee,
    format_rational,
    instance_digest,
    parse_instance,
    serialize_instance,
    welfare_vector,
)
from abcvote.rules import (
    dhondt,
    pav_score,
    pav_winners,
    phragmen_sequential,
    rule_x,
    rule_x_complete,
    seq_pav,
)

RULES = ("pav", "seqpav", "phragmen", "rulex", "rulex-complete", "dhondt")
AXIOMS = (
    "priceable",
    "laminar",
    "laminar-prop",
    "pjr",
    "ejr",
    "core",
    "lambda-core",
    "core-subject",
    "pigou-dalton",
    "pareto",
)


def _read_instance(path: str) -> ElectionInstance:
    with open(path, "r", encoding="ascii") as handle:
        return parse_instance(handle.read())


def _committee_flag(text: str, num_candidates: int) -> Committee:
    """Committee as typed on the command line: 1-based indices in any
    order (reports always render the canonical increasing form)."""
    members: set[int] = set()
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            c = int(token)
        except ValueError:
            raise ParseError(f"committee flag: bad index {token!r}") from None
        if not 1 <= c <= num_candidates:
            raise ParseError(
                f"committee flag: index {c} out of range 1..{num_candidates}"
            )
        if c - 1 in members:
            raise ParseError(f"committee flag: duplicate index {c}")
        members.add(c - 1)
    return frozenset(members)


def _fractions(values: Iterable[Fraction]) -> str:
    return ",".join(format_rational(v) for v in values)


def _voters(indices: Iterable[int]) -> str:
    return ",".join(str(i + 1) for i in sorted(indices))


def _emit(lines: list[tuple[str, str]], as_json: bool) -> None:
    if as_json:
        print(json.dumps(dict(lines)))
    else:
        for key, value in lines:
            print(f"{key}: {value}")


# ---------------------------------------------------------------------------
# run


def _trace_lines(instance: ElectionInstance, rule: str, all_ties: bool):
    """Rule-specific report fields: committee plus trace summary."""
    if rule == "pav":
        winners = pav_winners(instance)
        first = min(winners, key=sorted)
        lines = [
            ("score", format_rational(pav_score(instance, first))),
            ("committee", format_committee(first)),
        ]
        if all_ties:
            ordered = sorted(winners, key=sorted)
            lines.append(("ties", ";".join(format_committee(w) for w in ordered)))
        return first, lines
    if rule == "seqpav":
        committee = seq_pav(instance)
        return committee, [("committee", format_committee(committee))]
    if rule == "phragmen":
        trace = phragmen_sequential(instance)
        lines = [
            ("committee", format_committee(trace.committee)),
            ("elected", ",".join(str(c + 1) for c in trace.elected)),
            ("times", _fractions(trace.election_times)),
        ]
        return trace.committee, lines
    if rule in ("rulex", "rulex-complete"):
        if rule == "rulex":
            trace = rule_x(instance)
        else:
            trace = rule_x_complete(instance, strategy="phragmen_continuation")
        lines = [
            ("committee", format_committee(trace.committee)),
            ("elected", ",".join(str(c + 1) for c in trace.elected)),
            ("q", _fractions(trace.q_values)),
        ]
        if len(trace.committee) < instance.committee_size:
            lines.append(
                (
                    "undersized",
                    f"{len(trace.committee)} of {instance.committee_size} seats",
                )
            )
        return trace.committee, lines
    # dhondt: the instance must be a party-list profile
    if any(not ballot for ballot in instance.approvals):
        raise ParseError("apportionment needs non-empty ballots")
    slates = sorted({b for b in instance.approvals}, key=min)
    members = [c for slate in slates for c in slate]
    if len(members) != len(set(members)):
        raise ParseError("apportionment needs disjoint party slates")
    for ballot in instance.approvals:
        if ballot not in slates:
            raise ParseError("apportionment needs one slate per ballot")
    sizes = tuple(sum(1 for b in instance.approvals if b == s) for s in slates)
    seats = dhondt(sizes, instance.committee_size)
    committee = set()
    for slate, won in zip(slates, seats):
        if won > len(slate):
            raise ParseError(
                f"party with {len(slate)} candidates won {won} seats"
            )
        committee.update(sorted(slate)[:won])
    lines = [
        ("committee", format_committee(committee)),
        ("seats", ",".join(str(s) for s in seats)),
    ]
    return frozenset(committee), lines


def cmd_run(args) -> int:
    instance = _read_instance(args.input)
    committee, trace = _trace_lines(instance, args.rule, args.all_ties)
    lines = [
        ("instance", instance_digest(instance)),
        ("rule", args.rule),
    ]
    lines += trace
    lines.append(
        ("welfare", ",".join(str(u) for u in welfare_vector(instance, committee)))
    )
    _emit(lines, args.json)
    return 0


# ---------------------------------------------------------------------------
# check


def _deviation_lines(deviation: Deviation) -> list[tuple[str, str]]:
    return [
        ("S", "{" + _voters(deviation.coalition) + "}"),
        ("T", "{" + format_committee(deviation.alternative) + "}"),
    ]


def cmd_check(args) -> int:
    instance = _read_instance(args.input)
    committee = (
        _committee_flag(args.committee, instance.num_candidates)
        if args.committee is not None
        else None
    )
    if args.axiom != "laminar" and committee is None:
        raise ParseError(f"--axiom {args.axiom} requires --committee")
    budget = args.budget
    witness: list[tuple[str, str]] = []
    if args.axiom == "priceable":
        system = check_priceable(instance, committee)
        passed = system is not None
        if passed:
            witness.append(("price", format_rational(system.price)))
    elif args.axiom == "laminar":
        passed = check_laminar(instance) is not None
    elif args.axiom == "laminar-prop":
        if check_laminar(instance) is None:
            raise ParseError("laminar-prop: the instance is not laminar")
        passed = check_laminar_proportional(instance, committee)
    elif args.axiom == "pjr":
        deviation = check_pjr(instance, committee, budget=budget)
        passed = deviation is None
        if not passed:
            witness = _deviation_lines(deviation)
    elif args.axiom == "ejr":
        deviation = check_ejr(instance, committee, budget=budget)
        passed = deviation is None
        if not passed:
            witness = _deviation_lines(deviation)
    elif args.axiom in ("core", "lambda-core"):
        lam = Fraction(1)
        if args.axiom == "lambda-core":
            if args.lam is None:
                raise ParseError("lambda-core requires --lambda")
            lam = args.lam
        deviation = find_core_deviation(instance, committee, lam, budget=budget)
        passed = deviation is None
        if not passed:
            witness = _deviation_lines(deviation)
    elif args.axiom == "core-subject":
        if args.deviation_property is None:
            raise ParseError("core-subject requires --property")
        deviation = check_core_subject_to(
            instance, committee, args.deviation_property, budget=budget
        )
        passed = deviation is None
        if not passed:
            witness = _deviation_lines(deviation)
    elif args.axiom == "pigou-dalton":
        better = check_pigou_dalton(instance, committee, budget=budget)
        passed = better is None
        if not passed:
            witness = [("transfer", format_committee(better))]
    else:  # pareto
        better = check_pareto(instance, committee, budget=budget)
        passed = better is None
        if not passed:
            witness = [("dominating", format_committee(better))]
    lines = [
        ("instance", instance_digest(instance)),
        ("axiom", args.axiom),
        ("verdict", "PASS" if passed else "FAIL"),
    ]
    lines += witness
    _emit(lines, args.json)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# search

SEARCH_RULES: dict[str, Callable[[ElectionInstance], Committee]] = {
    "pav": lambda inst: min(pav_winners(inst), key=sorted),
    "seqpav": seq_pav,
    "phragmen": lambda inst: phragmen_sequential(inst).committee,
    "rulex": lambda inst: rule_x(inst).committee,
}


def _axiom_checker(axiom: str):
    """Map an axiom name to a checker returning a witness or None."""
    if axiom == "ejr":
        return check_ejr
    if axiom == "pjr":
        return check_pjr
    if axiom == "pareto":
        return check_pareto
    if axiom == "pigou-dalton":
        return check_pigou_dalton
    if axiom == "core":
        return lambda inst, committee: find_core_deviation(inst, committee)
    if axiom == "core2":
        return lambda inst, committee: find_core_deviation(
            inst, committee, Fraction(2)
        )
    if axiom == "priceable":
        return lambda inst, committee: (
            None if check_priceable(inst, committee) is not None else "unpriceable"
        )
    raise ParseError(f"search: unknown axiom {axiom!r}")


def _search_candidates(rng, max_n: int, max_m: int, max_k: int, planted: bool):
    """One trial instance: either independent-approval random or, for the
    planted variant, a random structured profile built around a sharing
    group (top-indexed shared block, booster/drain/filler candidates)."""
    import random as _random

    n = rng.randint(2, max_n)
    m = rng.randint(2, max_m)
    k = rng.randint(1, min(max_k, m))
    if not planted:
        seed = rng.getrandbits(32)
        density = rng.choice((0.3, 0.5, 0.7))
        return gen_random(seed, n, m, k, density)
    from math import ceil

    ell = rng.choice((2, 2, 3))
    if m < ell + 1 or k < 2:
        return None
    s_min = ceil(ell * n / k)
    if s_min > n - 1:
        return None
    s = rng.randint(s_min, n - 1)
    outsiders = list(range(s, n))
    ballots = [set(range(m - ell, m)) for _ in range(s)]
    ballots += [set() for _ in outsiders]
    for c in range(m - ell, m):
        if rng.random() < 0.5:
            for v in rng.sample(outsiders, rng.randint(0, len(outsiders))):
                ballots[v].add(c)
    for c in range(m - ell):
        if rng.random() < 0.45:
            for v in rng.sample(range(s), rng.randint(1, min(3, s))):
                ballots[v].add(c)
        for v in rng.sample(outsiders, rng.randint(0, len(outsiders))):
            ballots[v].add(c)
    if any(not b for b in ballots):
        return None
    return ElectionInstance(m, k, tuple(frozenset(b) for b in ballots))


def _paired_rotation_family(max_n: int, max_m: int, max_k: int):
    """Structured candidates for the sequential-rule representation hunt:
    three member pairs each approve a common three-candidate block plus
    two private drains, and three outsider pairs fund the drains (two
    outsider pairs per drain).  The family needs n = 12, m = 9, k = 6 —
    the member block is exactly at the cohesiveness threshold — and the
    drain funding schedule decides whether the block's candidates ever
    come up for election."""
    from itertools import combinations, product

    groups = 3
    k = 2 * groups
    m = k + 3
    n = 4 * groups
    if n > max_n or m > max_m or k > max_k:
        return
    witnesses = frozenset({k, k + 1, k + 2})
    pair_options = list(combinations(range(groups), 2))
    for assignment in product(pair_options, repeat=k):
        ballots = []
        for i in range(groups):
            ballot = frozenset({i, i + groups}) | witnesses
            ballots += [ballot, ballot]
        funded: list[set[int]] = [set() for _ in range(groups)]
        for drain, pairs in enumerate(assignment):
            for p in pairs:
                funded[p].add(drain)
        if any(not drains for drains in funded):
            continue
        for p in range(groups):
            ballots += [frozenset(funded[p])] * 2
        yield ElectionInstance(m, k, tuple(ballots))


def _exhaustive_small(max_n: int, max_m: int, max_k: int):
    """Every instance with at most 3 voters, 3 candidates: small enough to
    enumerate outright, and any counterexample here beats a sampled one."""
    from itertools import combinations, product

    for m in range(1, min(3, max_m) + 1):
        ballot_pool = [
            frozenset(c)
            for size in range(1, m + 1)
            for c in combinations(range(m), size)
        ]
        for n in range(1, min(3, max_n) + 1):
            for k in range(1, min(m, max_k) + 1):
                for ballots in product(ballot_pool, repeat=n):
                    yield ElectionInstance(m, k, tuple(ballots))


def _instance_key(instance: ElectionInstance):
    return (
        instance.num_voters,
        instance.num_candidates,
        instance.committee_size,
        tuple(sorted(tuple(sorted(b)) for b in instance.approvals)),
    )


def cmd_search(args) -> int:
    import random as _random

    if "+" in args.violation:
        axiom, _, rule = args.violation.partition("+")
    else:
        axiom, rule = "ejr", "phragmen"
        if args.violation != "ejr-phragmen":
            raise ParseError(f"search: unknown violation {args.violation!r}")
    if rule not in SEARCH_RULES:
        raise ParseError(f"search: unknown rule {rule!r}")
    run_rule = SEARCH_RULES[rule]
    checker = _axiom_checker(axiom)
    found: list[ElectionInstance] = []

    def probe(instance: ElectionInstance) -> None:
        committee = run_rule(instance)
        try:
            witness = checker(instance, committee)
        except SearchBudgetExceeded:
            return
        if witness is not None:
            found.append(instance)

    for instance in _exhaustive_small(args.max_n, args.max_m, args.max_k):
        probe(instance)
    if axiom == "ejr" and rule == "phragmen":
        for instance in _paired_rotation_family(args.max_n, args.max_m, args.max_k):
            probe(instance)
    rng = _random.Random(args.seed)
    for trial in range(args.trials):
        planted = rule == "phragmen" and axiom == "ejr" and trial % 2 == 1
        instance = _search_candidates(
            rng, args.max_n, args.max_m, args.max_k, planted
        )
        if instance is not None:
            probe(instance)
    if not found:
        print("none found")
        return 0
    smallest = min(found, key=_instance_key)
    sys.stdout.write(serialize_instance(smallest))
    return 0


# ---------------------------------------------------------------------------
# repro


class _Report:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.failures = 0

    def expect(self, label: str, got, want) -> None:
        if got == want:
            self.lines.append(f"ok   {label}: {want}")
        else:
            self.failures += 1
            self.lines.append(f"FAIL {label}: expected {want}, got {got}")

    def note(self, label: str, value) -> None:
        self.lines.append(f"     {label}: {value}")


def _welfare_sorted(instance: ElectionInstance, committee: Committee):
    return tuple(sorted(welfare_vector(instance, committee)))


def _desk_suite() -> list[ElectionInstance]:
    suite = [gen_random(seed, 6, 6, 3, 0.5) for seed in range(10)]
    suite += [gen_random(seed, 8, 6, 4, 0.3) for seed in range(10, 16)]
    suite += [gen_random(seed, 5, 5, 2, 0.7) for seed in range(16, 20)]
    suite += [fixture("example21"), fixture("example32"), fixture("example41")]
    return suite


def _matrix_cell(violations: list[str], total: int) -> str:
    if not violations:
        return f"✓ 0/{total}"
    return f"✗ {violations[0]}"


def cmd_repro(args) -> int:
    report = _Report()
    f = Fraction

    # Vote-splitting scores: slate-vs-blocs instance.
    big = fixture("phragmen1899")
    split = frozenset({0, 1, 2, 3}) | frozenset({5})
    sweep = frozenset(range(5))
    report.expect("bloc committee score", pav_score(big, split), 7750)
    report.expect("sweep committee score", pav_score(big, sweep), 7850)
    report.expect(
        "score-optimal committee",
        [format_committee(w) for w in pav_winners(big)],
        ["1,2,3,4,5"],
    )

    # Spend-clock elections on the fifteen-voter blocks instance.
    blocks = fixture("example21")
    trace = phragmen_sequential(blocks)
    t1 = f(15, 48)
    expected_times = (t1, t1 + f(9, 32), t1 + f(9, 32) + f(25, 128))
    expected_times += (expected_times[-1] + f(81, 256),)
    report.expect("spend-clock order", trace.elected, (0, 3, 1, 4))
    report.expect("spend-clock times", trace.election_times, expected_times)
    report.expect(
        "spend-clock committee", format_committee(trace.committee), "1,2,4,5"
    )

    # Budget-spending q-values on the same profile.
    xtrace = rule_x(blocks)
    report.expect(
        "budget q-values", xtrace.q_values, (f(15, 48), f(15, 48), f(15, 40), f(1))
    )
    report.expect(
        "budget committee", format_committee(xtrace.committee), "1,2,3,4"
    )
    forced = rule_x(blocks, tie_choices={2: 3})
    report.expect(
        "forced-tie committee", format_committee(forced.committee), "1,2,4"
    )
    report.expect("forced-tie stops early", len(forced.committee) < 4, True)

    # The introduction's dichotomy instance.
    intro = fixture("intro")
    report.expect(
        "intro spend-clock welfare",
        welfare_vector(intro, phragmen_sequential(intro).committee),
        (4, 4, 4, 2, 2, 2),
    )
    report.expect(
        "intro budget welfare",
        welfare_vector(intro, rule_x(intro).committee),
        (4, 4, 4, 2, 2, 2),
    )
    pav_intro = pav_winners(intro)
    report.expect(
        "intro score-optimal welfare",
        sorted(set(welfare_vector(intro, w) for w in pav_intro)),
        [(3, 3, 3, 3, 3, 3)],
    )
    committee_a = frozenset({0, 1, 2, 3, 4, 5, 6, 7, 9, 10, 12, 13})
    committee_b = frozenset({0, 1, 2}) | frozenset(range(6, 15))
    report.expect(
        "committee (a) priceable", check_priceable(intro, committee_a) is not None, True
    )
    report.expect(
        "committee (a) laminar-proportional",
        check_laminar_proportional(intro, committee_a),
        True,
    )
    report.expect(
        "committee (b) priceable", check_priceable(intro, committee_b) is not None, False
    )
    deviation = find_core_deviation(intro, committee_b)
    report.expect("committee (b) blocked", deviation is not None, True)
    report.expect(
        "blocking coalition", _voters(deviation.coalition) if deviation else "", "1,2,3"
    )

    # Laminar welfare split: equal versus skewed utility vectors.
    one = fixture("thm32_instance1")
    committees = laminar_proportional_committees(one)
    report.expect(
        "first split instance: all proportional welfare vectors",
        sorted(set(_welfare_sorted(one, w) for w in committees)),
        [(6,) * 8],
    )
    report.expect(
        "first split instance: skewed vector achievable",
        _welfare_sorted(one, frozenset(range(22)) - {17, 21}),
        (5, 5, 5, 5, 7, 7, 7, 7),
    )
    two = fixture("thm32_instance2")
    committees = laminar_proportional_committees(two)
    report.expect(
        "second split instance: unique proportional committee",
        [format_committee(w) for w in committees],
        ["1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20"],
    )
    report.expect(
        "second split instance: its welfare vector",
        _welfare_sorted(two, committees[0]),
        (5, 5, 5, 5, 7, 7, 7, 7),
    )
    report.expect(
        "second split instance: equal vector achievable",
        _welfare_sorted(two, frozenset(range(16)) | frozenset(range(20, 24))),
        (6,) * 8,
    )

    # Constrained deviation on the 160-voter catalogue instance: the
    # budget rule's committee admits a priceable deviation.
    prop = fixture("propB1")
    committee = rule_x(prop).committee
    report.expect(
        "large instance: budget committee",
        format_committee(committee),
        "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20",
    )
    coalition = frozenset(range(40)) | frozenset(range(56, 96)) | frozenset(
        range(112, 160)
    )
    alternative = frozenset(range(20, 36))
    deviation = Deviation(coalition=coalition, alternative=alternative, kind="core")
    report.expect(
        "large instance: deviation valid",
        verify_deviation(prop, committee, deviation),
        True,
    )
    report.expect(
        "large instance: deviation priceable",
        _propb1_deviation_priceable(prop, coalition, alternative),
        True,
    )

    report.lines.append("")
    report.lines.append("desk-scale evidence (bounded property runs, not proofs)")
    _desk_matrix(report)

    payload = {"ok": report.failures == 0, "lines": report.lines}
    if args.json:
        print(json.dumps(payload))
    else:
        for line in report.lines:
            print(line)
        print("ok" if report.failures == 0 else f"{report.failures} mismatches")
    return 0 if report.failures == 0 else 1


def _propb1_deviation_priceable(
    instance: ElectionInstance, coalition: frozenset[int], alternative: frozenset[int]
) -> bool:
    """The deviating coalition supports its 16 candidates with an explicit
    price system over the restricted profile: price 8, the 80 early voters
    paying 1/8 per approved deviation candidate and each late voter 1/2 to
    each of its two."""
    from abcvote.model import restrict_profile

    restricted = restrict_profile(instance, sorted(coalition), len(alternative))
    payments = []
    for original in sorted(coalition):
        ballot = instance.approvals[original] & alternative
        if original < 112:
            payments.append({c: Fraction(1, 8) for c in ballot})
        else:
            payments.append({c: Fraction(1, 2) for c in ballot})
    system = PriceSystem(price=Fraction(8), payments=tuple(payments))
    return validate_price_system(restricted, alternative, system)


def _desk_matrix(report: _Report) -> None:
    suite = _desk_suite()
    laminar_suite = [gen_laminar(seed, 3, 10, 4) for seed in range(10)]
    laminar_suite += [fixture("thm32_instance1"), fixture("thm32_instance2")]
    rules: list[tuple[str, Callable[[ElectionInstance], Committee]]] = [
        ("pav", SEARCH_RULES["pav"]),
        ("phragmen", SEARCH_RULES["phragmen"]),
        ("rulex", SEARCH_RULES["rulex"]),
    ]
    guaranteed = {
        ("pav", "pjr"),
        ("pav", "ejr"),
        ("pav", "pareto"),
        ("pav", "pigou-dalton"),
        ("phragmen", "laminar-prop"),
        ("phragmen", "priceable"),
        ("phragmen", "pjr"),
        ("rulex", "laminar-prop"),
        ("rulex", "priceable"),
        ("rulex", "pjr"),
        ("rulex", "ejr"),
        ("rulex", "constrained-core"),
    }
    checkers: dict[str, Callable[[ElectionInstance, Committee], object]] = {
        "pjr": check_pjr,
        "ejr": check_ejr,
        "pareto": check_pareto,
        "pigou-dalton": check_pigou_dalton,
        "constrained-core": lambda inst, c: check_core_subject_to(
            inst, c, "price_eq"
        ),
        "priceable": lambda inst, c: (
            None if check_priceable(inst, c) is not None else "no price system"
        ),
    }
    rows = []
    for axiom in (
        "laminar-prop",
        "priceable",
        "pjr",
        "ejr",
        "constrained-core",
        "pareto",
        "pigou-dalton",
    ):
        cells = []
        pool = laminar_suite if axiom == "laminar-prop" else suite
        for rule_name, run_rule in rules:
            violations = []
            for pos, instance in enumerate(pool):
                committee = run_rule(instance)
                if axiom == "laminar-prop":
                    bad = not check_laminar_proportional(instance, committee)
                else:
                    bad = checkers[axiom](instance, committee) is not None
                if bad:
                    violations.append(f"instance {pos}")
            if violations and (rule_name, axiom) in guaranteed:
                report.failures += 1
                report.lines.append(
                    f"FAIL {rule_name}/{axiom} violated at desk scale: "
                    + violations[0]
                )
            cells.append(_matrix_cell(violations, len(pool)))
        rows.append((axiom, cells))

    # Welfarist row: two profiles with identical welfare possibilities
    # must get equal welfare vectors from a purely welfare-based rule.
    pair = fixture("fig2_profile1"), fixture("fig2_profile2")
    swap = list(range(6, 12)) + list(range(0, 6))
    cells = ["✓ by definition"]
    for run_rule in (SEARCH_RULES["phragmen"], SEARCH_RULES["rulex"]):
        first = welfare_vector(pair[0], run_rule(pair[0]))
        second = welfare_vector(pair[1], run_rule(pair[1]))
        mirrored = tuple(second[v] for v in swap)
        cells.append("✓ pair agrees" if first == mirrored else "✗ paired profiles")
    rows.append(("welfarist", cells))

    lam_cells = []
    for rule_name, run_rule in rules:
        worst = Fraction(1)
        unstable = False
        for instance in suite:
            lam = minimal_core_lambda(instance, run_rule(instance))
            if lam is None:
                unstable = True
            else:
                worst = max(worst, lam)
        label = f"max λ {format_rational(worst)}" + (" (+∞ seen)" if unstable else "")
        if rule_name == "pav" and (worst > 2 or unstable):
            report.failures += 1
            report.lines.append(f"FAIL pav core approximation above 2: {label}")
        lam_cells.append(label)
    rows.append(("core", lam_cells))

    report.lines.append(
        f"suites: {len(suite)} bounded random instances "
        "(n ≤ 8, m ≤ 6, k ≤ 4) plus three catalogue profiles; "
        f"laminar row over {len(laminar_suite)} instances "
        "(10 derived laminar profiles and the two welfare-split "
        "instances); welfarist row over the 12-voter paired profiles"
    )
    width = max(len(r[0]) for r in rows)
    header = " " * (width + 2) + "  ".join(
        f"{name:<18}" for name, _ in (("pav", 0), ("phragmen", 0), ("rulex", 0))
    )
    report.lines.append(header.rstrip())
    for name, cells in rows:
        row = f"{name:<{width}}  " + "  ".join(f"{cell:<18}" for cell in cells)
        report.lines.append(row.rstrip())


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abcvote", description="committee elections with exact arithmetic"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a committee rule on an instance")
    run.add_argument("--rule", choices=RULES, required=True)
    run.add_argument("--input", required=True)
    run.add_argument("--all-ties", action="store_true", dest="all_ties")
    run.add_argument("--json", action="store_true")
    run.set_defaults(handler=cmd_run)

    check = sub.add_parser("check", help="test a committee against an axiom")
    check.add_argument("--axiom", choices=AXIOMS, required=True)
    check.add_argument("--input", required=True)
    check.add_argument("--committee")
    check.add_argument("--lambda", dest="lam", type=Fraction)
    check.add_argument(
        "--property",
        dest="deviation_property",
        choices=("cohesive", "price_eq", "priceable"),
    )
    check.add_argument("--budget", type=int, default=1 << 20)
    check.add_argument("--json", action="store_true")
    check.set_defaults(handler=cmd_check)

    search = sub.add_parser("search", help="hunt for rule/axiom counterexamples")
    search.add_argument("--violation", required=True)
    search.add_argument("--max-n", dest="max_n", type=int, default=12)
    search.add_argument("--max-m", dest="max_m", type=int, default=10)
    search.add_argument("--max-k", dest="max_k", type=int, default=6)
    search.add_argument("--seed", type=int, default=0)
    search.add_argument("--trials", type=int, default=10000)
    search.set_defaults(handler=cmd_search)

    repro = sub.add_parser("repro", help="re-derive the catalogue's numbers")
    repro.add_argument("--json", action="store_true")
    repro.set_defaults(handler=cmd_repro)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
