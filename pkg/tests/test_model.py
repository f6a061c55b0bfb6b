"""Tests for the instance model and the text file format."""

from __future__ import annotations

import pytest
from hypothesis import given

from abcvote.model import (
    ElectionInstance,
    ParseError,
    format_committee,
    instance_digest,
    parse_committee,
    parse_instance,
    restrict_profile,
    serialize_instance,
    validate_committee,
    welfare_vector,
)
from tests.conftest import instances, instances_with_committee


def test_parse_small_instance():
    inst = parse_instance("3 2 2\n1 2\n3\n")
    assert inst.num_candidates == 3
    assert inst.num_voters == 2
    assert inst.committee_size == 2
    assert inst.approvals == (frozenset({0, 1}), frozenset({2}))


def test_parse_comments_blank_ballots_and_trailing_whitespace():
    text = "# generated by hand\n4 3 2  \n1 2\n\n  # midway comment\n3 4\t\n"
    inst = parse_instance(text)
    assert inst.approvals == (frozenset({0, 1}), frozenset(), frozenset({2, 3}))


def test_parse_rejects_k_larger_than_m():
    with pytest.raises(ParseError, match=r"line 1.*k=3 exceeds m=2"):
        parse_instance("2 1 3\n1\n")


def test_parse_rejects_malformed_header():
    with pytest.raises(ParseError, match="line 1"):
        parse_instance("3 2\n1\n2\n")
    with pytest.raises(ParseError, match="line 1"):
        parse_instance("a b c\n")
    with pytest.raises(ParseError, match="line 1"):
        parse_instance("")


def test_parse_rejects_candidate_out_of_range():
    with pytest.raises(ParseError, match="line 3.*out of range"):
        parse_instance("3 2 2\n1\n4\n")
    with pytest.raises(ParseError, match="line 2.*out of range"):
        parse_instance("3 2 2\n0 1\n2\n")


def test_parse_rejects_duplicates_and_disorder():
    with pytest.raises(ParseError, match="line 2.*duplicate candidate 2"):
        parse_instance("3 1 1\n2 2\n")
    with pytest.raises(ParseError, match="line 2.*strictly increasing"):
        parse_instance("3 1 1\n2 1\n")


def test_parse_rejects_missing_or_extra_ballots():
    with pytest.raises(ParseError, match="announces 3 ballots"):
        parse_instance("3 3 1\n1\n2\n")
    with pytest.raises(ParseError, match="line 4.*unexpected content"):
        parse_instance("3 2 1\n1\n2\n3\n")


def test_serialize_round_trips_by_hand():
    inst = ElectionInstance(
        num_candidates=5,
        committee_size=3,
        approvals=(frozenset({0, 4}), frozenset(), frozenset({1, 2, 3})),
    )
    text = serialize_instance(inst)
    assert text == "5 3 3\n1 5\n\n2 3 4\n"
    assert parse_instance(text) == inst


@given(instances())
def test_serialize_parse_round_trip(inst):
    assert parse_instance(serialize_instance(inst)) == inst


@given(instances())
def test_digest_is_stable_and_content_based(inst):
    assert instance_digest(inst) == instance_digest(parse_instance(serialize_instance(inst)))
    assert len(instance_digest(inst)) == 64


def test_instance_validation():
    with pytest.raises(ValueError):
        ElectionInstance(num_candidates=2, committee_size=3, approvals=(frozenset(),))
    with pytest.raises(ValueError):
        ElectionInstance(num_candidates=2, committee_size=0, approvals=(frozenset(),))
    with pytest.raises(ValueError):
        ElectionInstance(num_candidates=2, committee_size=1, approvals=())
    with pytest.raises(ValueError):
        ElectionInstance(num_candidates=2, committee_size=1, approvals=(frozenset({2}),))


# The six-voter instance from the package README: three voters share three
# candidates and privately approve one more each; three voters approve
# disjoint triples.
INTRO = ElectionInstance(
    num_candidates=15,
    committee_size=12,
    approvals=(
        frozenset({0, 1, 2, 3}),
        frozenset({0, 1, 2, 4}),
        frozenset({0, 1, 2, 5}),
        frozenset({6, 7, 8}),
        frozenset({9, 10, 11}),
        frozenset({12, 13, 14}),
    ),
)


def test_welfare_vector_on_contrasting_committees():
    balanced_power = frozenset({0, 1, 2, 3, 4, 5, 6, 7, 9, 10, 12, 13})
    balanced_welfare = frozenset({0, 1, 2}) | frozenset(range(6, 15))
    assert welfare_vector(INTRO, balanced_power) == (4, 4, 4, 2, 2, 2)
    assert welfare_vector(INTRO, balanced_welfare) == (3, 3, 3, 3, 3, 3)


def test_approvers():
    assert INTRO.approvers(0) == frozenset({0, 1, 2})
    assert INTRO.approvers(3) == frozenset({0})
    assert INTRO.approvers(14) == frozenset({5})
    with pytest.raises(ValueError):
        INTRO.approvers(15)


def test_restrict_profile_keeps_candidate_universe():
    sub = restrict_profile(INTRO, [0, 1, 2], new_k=6)
    assert sub.num_candidates == INTRO.num_candidates
    assert sub.num_voters == 3
    assert sub.committee_size == 6
    assert sub.approvals == INTRO.approvals[:3]
    with pytest.raises(ValueError):
        restrict_profile(INTRO, [], new_k=2)
    with pytest.raises(ValueError):
        restrict_profile(INTRO, [7], new_k=2)


def test_validate_committee():
    assert validate_committee(INTRO, [0, 1]) == frozenset({0, 1})
    with pytest.raises(ValueError):
        validate_committee(INTRO, range(13))
    with pytest.raises(ValueError):
        validate_committee(INTRO, [15])


@given(instances_with_committee())
def test_welfare_monotone_under_committee_growth(pair):
    inst, members = pair
    smaller = frozenset(sorted(members)[:-1]) if members else frozenset()
    w_small = welfare_vector(inst, smaller)
    w_full = welfare_vector(inst, members)
    assert all(a <= b for a, b in zip(w_small, w_full))


@given(instances_with_committee())
def test_welfare_sum_equals_approver_sum(pair):
    inst, members = pair
    total = sum(welfare_vector(inst, members))
    assert total == sum(len(inst.approvers(c)) for c in members)


def test_committee_literals():
    assert parse_committee("1,2,4,5", 6) == frozenset({0, 1, 3, 4})
    assert parse_committee("", 6) == frozenset()
    assert format_committee({3, 0, 1, 4}) == "1,2,4,5"
    assert format_committee(set()) == ""
    with pytest.raises(ParseError):
        parse_committee("2,1", 6)
    with pytest.raises(ParseError):
        parse_committee("1,1", 6)
    with pytest.raises(ParseError):
        parse_committee("0,1", 6)
    with pytest.raises(ParseError):
        parse_committee("1,7", 6)
    with pytest.raises(ParseError):
        parse_committee("1,x", 6)
