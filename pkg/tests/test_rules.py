"""Tests for the voting rules: frozen hand-computed traces plus properties."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings

from abcvote.model import ElectionInstance, SearchBudgetExceeded, welfare_vector
from abcvote.rules import (
    dhondt,
    harmonic,
    min_affordable_q,
    pav_score,
    pav_winners,
    phragmen_sequential,
    rule_x,
    rule_x_complete,
    seq_pav,
)
from tests.conftest import instances

F = Fraction


def build(m: int, k: int, ballots) -> ElectionInstance:
    return ElectionInstance(m, k, tuple(frozenset(b) for b in ballots))


def party_list(voter_counts, candidates_per_party, k: int) -> ElectionInstance:
    """Disjoint parties; every voter of a party approves all its candidates."""
    blocks, start = [], 0
    for size in candidates_per_party:
        blocks.append(frozenset(range(start, start + size)))
        start += size
    ballots = []
    for z, count in enumerate(voter_counts):
        ballots.extend([blocks[z]] * count)
    return ElectionInstance(start, k, tuple(ballots))


def party_seats(committee, candidates_per_party) -> tuple[int, ...]:
    seats, start = [], 0
    for size in candidates_per_party:
        seats.append(len([c for c in committee if start <= c < start + size]))
        start += size
    return tuple(seats)


def as_sorted_tuples(committees) -> list[tuple[int, ...]]:
    return sorted(tuple(sorted(w)) for w in committees)


# Two 0.6/0.4 camps sharing one candidate; the minority camp otherwise
# disjoint.  Candidate 0 is the shared one, 1-4 the majority's, 5-8 the
# minority's.
BIG_1899 = build(9, 5, [{0, 1, 2, 3, 4}] * 3000 + [{0, 5, 6, 7, 8}] * 1000)

# Five candidates, fifteen voters in four blocks; used for both sequential
# rules' worked traces.
BLOCKS_15 = build(
    5,
    4,
    [{0, 1, 2}] * 5 + [{0, 1, 2, 3, 4}] * 5 + [{0, 1, 3, 4}] * 2 + [{3, 4}] * 3,
)

# Six single-minded voter groups: three overlapping in {0,1,2} plus private
# picks 3/4/5, three with disjoint triples.
SIX_GROUPS = build(
    15,
    12,
    [
        {0, 1, 2, 3},
        {0, 1, 2, 4},
        {0, 1, 2, 5},
        {6, 7, 8},
        {9, 10, 11},
        {12, 13, 14},
    ],
)

# Four voters on a common block {0,1,2,3}, two on {0} plus a private tail.
SPLIT_TIE = build(8, 4, [{0, 1, 2, 3}] * 4 + [{0, 4, 5, 6, 7}] * 2)


# ---------------------------------------------------------------------------
# PAV


def test_harmonic_values():
    assert harmonic(0) == 0
    assert harmonic(1) == 1
    assert harmonic(3) == F(11, 6)
    assert harmonic(5) == F(137, 60)


def test_pav_score_big_instance():
    assert pav_score(BIG_1899, frozenset({0, 1, 2, 3, 4})) == 7850
    assert pav_score(BIG_1899, frozenset({0, 1, 2, 3, 5})) == 7750
    assert pav_score(BIG_1899, frozenset()) == 0


def test_pav_winners_big_instance_unique():
    assert pav_winners(BIG_1899) == [frozenset({0, 1, 2, 3, 4})]


def test_pav_winners_six_groups():
    winners = pav_winners(SIX_GROUPS)
    assert winners == [frozenset({0, 1, 2}) | frozenset(range(6, 15))]
    assert welfare_vector(SIX_GROUPS, winners[0]) == (3, 3, 3, 3, 3, 3)


def test_pav_winners_split_tie_contains_block():
    winners = pav_winners(SPLIT_TIE)
    assert frozenset({0, 1, 2, 3}) in winners
    assert all(pav_score(SPLIT_TIE, w) == F(31, 3) for w in winners)


def test_pav_winners_party_list_seats():
    inst = party_list((3, 3, 4), (4, 4, 5), 10)
    winners = pav_winners(inst)
    assert len(winners) == 4 * 4 * 5
    assert all(party_seats(w, (4, 4, 5)) == (3, 3, 4) for w in winners)


def test_pav_winners_symmetric_tie():
    inst = build(2, 1, [{0}, {1}])
    assert as_sorted_tuples(pav_winners(inst)) == [(0,), (1,)]


def test_pav_budget_exceeded():
    with pytest.raises(SearchBudgetExceeded, match="too large"):
        pav_winners(SIX_GROUPS, node_budget=3)


@settings(deadline=None, max_examples=60)
@given(instances(max_voters=5, max_candidates=6))
def test_pav_winners_match_brute_force(inst):
    expected, best = [], None
    for combo in combinations(inst.candidates, inst.committee_size):
        score = pav_score(inst, frozenset(combo))
        if best is None or score > best:
            expected, best = [combo], score
        elif score == best:
            expected.append(combo)
    winners = pav_winners(inst)
    assert as_sorted_tuples(winners) == sorted(expected)
    assert all(pav_score(inst, w) == best for w in winners)


# ---------------------------------------------------------------------------
# sequential PAV


def test_seq_pav_unanimous_lexicographic():
    inst = build(3, 2, [{0, 1, 2}] * 4)
    assert seq_pav(inst) == frozenset({0, 1})


def test_seq_pav_big_instance_first_pick():
    # the shared candidate has 4000 approvers, the best solo gain
    first = build(9, 1, BIG_1899.approvals)
    assert seq_pav(first) == frozenset({0})


def test_seq_pav_party_list_seats():
    inst = party_list((3, 3, 4), (10, 10, 10), 10)
    assert party_seats(seq_pav(inst), (10, 10, 10)) == (3, 3, 4)


# ---------------------------------------------------------------------------
# the money-earning sequential rule


def test_phragmen_blocks_trace():
    trace = phragmen_sequential(BLOCKS_15)
    assert trace.elected == (0, 3, 1, 4)
    assert trace.election_times == (F(5, 16), F(19, 32), F(101, 128), F(283, 256))
    assert trace.payments[0] == {i: F(5, 16) for i in range(12)}
    assert trace.payments[1] == {
        **{i: F(9, 32) for i in range(5, 12)},
        **{i: F(19, 32) for i in range(12, 15)},
    }
    assert trace.payments[2] == {
        **{i: F(61, 128) for i in range(5)},
        **{i: F(25, 128) for i in range(5, 12)},
    }
    assert trace.payments[3] == {
        **{i: F(81, 256) for i in range(5, 12)},
        **{i: F(131, 256) for i in range(12, 15)},
    }
    assert all(sum(step.values()) == F(15, 4) for step in trace.payments)
    assert trace.committee == frozenset({0, 1, 3, 4})


def test_phragmen_unanimous_times():
    # In units of the per-candidate price n/k these times read k'/n; the
    # trace keeps the raw simulation clock, where they are k'/k.
    inst = build(3, 2, [{0, 1, 2}] * 4)
    trace = phragmen_sequential(inst)
    assert trace.elected == (0, 1)
    assert trace.election_times == (F(1, 2), F(1, 1))


def test_phragmen_stops_without_approvers():
    inst = build(3, 2, [{0}, {0}])
    trace = phragmen_sequential(inst)
    assert trace.elected == (0,)
    assert trace.election_times == (F(1, 2),)


@settings(deadline=None, max_examples=80)
@given(instances())
def test_phragmen_invariants(inst):
    trace = phragmen_sequential(inst)
    price = F(inst.num_voters, inst.committee_size)
    approved = {c for c in inst.candidates if inst.approvers(c)}
    assert len(trace.elected) == min(inst.committee_size, len(approved))
    assert set(trace.elected) <= approved
    assert len(set(trace.elected)) == len(trace.elected)
    assert all(t0 <= t1 for t0, t1 in zip(trace.election_times, trace.election_times[1:]))
    for step in trace.payments:
        assert sum(step.values()) == price
        assert all(amount > 0 for amount in step.values())
    # money conservation: total spent is one price per elected candidate
    total = sum((sum(step.values()) for step in trace.payments), F(0))
    assert total == price * len(trace.elected)


# ---------------------------------------------------------------------------
# the budget-spending rule


def test_min_affordable_q_cases():
    assert min_affordable_q([1, 1, 1], F(2)) == F(2, 3)
    assert min_affordable_q([F(1, 2), 1], F(1)) == F(1, 2)
    assert min_affordable_q([F(1, 4), 1], F(1)) == F(3, 4)
    assert min_affordable_q([F(1, 4), F(1, 4)], F(1)) is None
    assert min_affordable_q([], F(1)) is None
    assert min_affordable_q([F(1, 2), F(1, 2)], F(1)) == F(1, 2)


@settings(deadline=None, max_examples=120)
@given(instances())
def test_min_affordable_q_is_minimal(inst):
    price = F(inst.num_voters, inst.committee_size)
    budgets = [F(1, i + 1) for i in range(inst.num_voters)]
    q = min_affordable_q(budgets, price)
    spend = lambda cap: sum(min(cap, b) for b in budgets)
    if q is None:
        assert spend(max(budgets)) < price
    else:
        assert spend(q) >= price
        assert spend(q * F(99, 100)) < price


def test_rule_x_blocks_trace():
    trace = rule_x(BLOCKS_15)
    assert trace.elected == (0, 1, 2, 3)
    assert trace.q_values == (F(5, 16), F(5, 16), F(3, 8), F(1))
    assert trace.budgets[2] == (F(0),) * 10 + (F(3, 8), F(3, 8), F(1), F(1), F(1))
    assert trace.budgets[3] == (F(0),) * 15
    assert trace.completed is False


def test_rule_x_unanimous():
    inst = build(4, 3, [{0, 1, 2, 3}] * 5)
    trace = rule_x(inst)
    assert trace.elected == (0, 1, 2)
    assert trace.q_values == (F(1, 3),) * 3
    assert trace.budgets[-1] == (F(0),) * 5


def test_rule_x_forced_tie_strands_money():
    trace = rule_x(BLOCKS_15, tie_choices={2: 3})
    assert trace.elected == (0, 1, 3)
    assert trace.q_values == (F(5, 16), F(5, 16), F(3, 8))
    assert trace.budgets[-1] == (F(3, 8),) * 5 + (F(0),) * 7 + (F(5, 8),) * 3
    assert trace.completed is False


def test_rule_x_force_must_be_tied():
    with pytest.raises(ValueError, match="tie set"):
        rule_x(BLOCKS_15, tie_choices={0: 2})


def test_rule_x_force_other_tied_candidate():
    trace = rule_x(BLOCKS_15, tie_choices={0: 1})
    assert trace.elected[0] == 1
    assert trace.committee == frozenset({0, 1, 2, 3})


def test_rule_x_complete_appends_after_forced_tie():
    trace = rule_x_complete(
        BLOCKS_15, strategy="phragmen_continuation", tie_choices={2: 3}
    )
    assert trace.elected == (0, 1, 3, 2)
    assert trace.q_values == (F(5, 16), F(5, 16), F(3, 8))
    assert trace.completed is True
    assert trace.budgets[-1] == (F(0),) * 10 + (
        F(3, 16),
        F(3, 16),
        F(13, 16),
        F(13, 16),
        F(13, 16),
    )


def test_rule_x_complete_passthrough_when_full():
    trace = rule_x_complete(BLOCKS_15, strategy="phragmen_continuation")
    assert trace == rule_x(BLOCKS_15)
    assert trace.completed is False


def test_rule_x_complete_none_leaves_undersized():
    trace = rule_x_complete(BLOCKS_15, strategy="none", tie_choices={2: 3})
    assert trace.elected == (0, 1, 3)
    assert trace.completed is False


def test_rule_x_complete_rejects_unknown_strategy():
    with pytest.raises(ValueError, match="strategy"):
        rule_x_complete(BLOCKS_15, strategy="borda")


def test_rule_x_undersized_then_continued():
    inst = build(3, 2, [{0}, {0}, {1}, set()])
    plain = rule_x(inst)
    assert plain.elected == (0,)
    assert plain.completed is False
    full = rule_x_complete(inst, strategy="phragmen_continuation")
    assert full.elected == (0, 1)
    assert full.completed is True
    assert full.budgets[-1] == (F(1), F(1), F(0), F(2))


@settings(deadline=None, max_examples=80)
@given(instances())
def test_rule_x_invariants(inst):
    trace = rule_x(inst)
    price = F(inst.num_voters, inst.committee_size)
    assert len(trace.elected) <= inst.committee_size
    assert len(set(trace.elected)) == len(trace.elected)
    assert trace.completed is False
    previous = (F(1),) * inst.num_voters
    for snapshot in trace.budgets:
        assert all(F(0) <= b <= F(1) for b in snapshot)
        assert all(b <= p for b, p in zip(snapshot, previous))
        # each purchase moves exactly one price out of the budgets
        assert sum(previous) - sum(snapshot) == price
        previous = snapshot


@settings(deadline=None, max_examples=40)
@given(instances())
def test_rule_x_complete_reaches_k_when_possible(inst):
    trace = rule_x_complete(inst, strategy="phragmen_continuation")
    approved = {c for c in inst.candidates if inst.approvers(c)}
    assert len(trace.elected) == min(inst.committee_size, len(approved))
    plain = rule_x(inst)
    assert trace.elected[: len(plain.elected)] == plain.elected
    assert trace.completed is (len(trace.elected) > len(plain.elected))


# ---------------------------------------------------------------------------
# apportionment


def test_dhondt_examples():
    assert dhondt((5, 3, 1), 3) == (2, 1, 0)
    assert dhondt((30, 30, 40), 10) == (3, 3, 4)
    assert dhondt((7,), 5) == (5,)
    assert dhondt((2, 2, 2, 12), 6) == (1, 0, 0, 5)


def test_dhondt_tie_goes_to_first_party():
    assert dhondt((1, 1), 1) == (1, 0)
    assert dhondt((2, 2, 2), 4) == (2, 1, 1)


def test_dhondt_rejects_bad_input():
    with pytest.raises(ValueError):
        dhondt((), 3)
    with pytest.raises(ValueError):
        dhondt((3, -1), 2)
    with pytest.raises(ValueError):
        dhondt((3,), -1)


# ---------------------------------------------------------------------------
# agreement on integral party-list instances


INTEGRAL_CASES = [
    # (quotas per party, voter multiplier, spare candidates per party)
    ((3, 3, 4), 1, 1),
    ((1, 2, 3), 2, 0),
    ((2, 4), 2, 1),
    ((5,), 2, 2),
    ((1, 1, 1), 4, 1),
    ((4, 2), 1, 0),
    ((2, 2, 2), 2, 1),
]


@pytest.mark.parametrize("quotas,multiplier,spare", INTEGRAL_CASES)
def test_party_list_rules_agree_with_apportionment(quotas, multiplier, spare):
    k = sum(quotas)
    voter_counts = tuple(q * multiplier for q in quotas)
    candidates_per_party = tuple(q + spare for q in quotas)
    inst = party_list(voter_counts, candidates_per_party, k)
    assert dhondt(voter_counts, k) == quotas
    assert party_seats(seq_pav(inst), candidates_per_party) == quotas
    assert party_seats(phragmen_sequential(inst).committee, candidates_per_party) == quotas
    assert party_seats(rule_x(inst).committee, candidates_per_party) == quotas
    for winner in pav_winners(inst):
        assert party_seats(winner, candidates_per_party) == quotas


def test_party_list_trace_details():
    inst = party_list((3, 3, 4), (10, 10, 10), 10)
    phragmen = phragmen_sequential(inst)
    assert phragmen.elected == (20, 0, 10, 21, 1, 11, 22, 2, 12, 23)
    assert phragmen.election_times == (
        F(1, 4), F(1, 3), F(1, 3), F(1, 2), F(2, 3),
        F(2, 3), F(3, 4), F(1), F(1), F(1),
    )
    # no alternation here: a party's budgets stay above the next q until the
    # party is exhausted, so the q-ties always resolve lexicographically
    spending = rule_x(inst)
    assert spending.elected == (20, 21, 22, 23, 0, 1, 2, 10, 11, 12)
    assert spending.q_values == (F(1, 4),) * 4 + (F(1, 3),) * 6


# ---------------------------------------------------------------------------
# determinism


@settings(deadline=None, max_examples=30)
@given(instances(max_voters=5, max_candidates=5))
def test_rules_are_deterministic(inst):
    assert pav_winners(inst) == pav_winners(inst)
    assert seq_pav(inst) == seq_pav(inst)
    assert phragmen_sequential(inst) == phragmen_sequential(inst)
    assert rule_x(inst) == rule_x(inst)
    assert rule_x_complete(inst, "phragmen_continuation") == rule_x_complete(
        inst, "phragmen_continuation"
    )
