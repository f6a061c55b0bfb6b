"""Shared hypothesis strategies for randomized property tests."""

from __future__ import annotations

from hypothesis import strategies as st

from abcvote.model import ElectionInstance


@st.composite
def instances(draw, max_voters: int = 6, max_candidates: int = 6, max_k: int | None = None):
    """A small random election instance (empty ballots allowed)."""
    m = draw(st.integers(1, max_candidates))
    n = draw(st.integers(1, max_voters))
    k_cap = m if max_k is None else min(m, max_k)
    k = draw(st.integers(1, k_cap))
    ballots = draw(
        st.lists(
            st.frozensets(st.integers(0, m - 1)),
            min_size=n,
            max_size=n,
        )
    )
    return ElectionInstance(num_candidates=m, committee_size=k, approvals=tuple(ballots))


@st.composite
def instances_with_committee(draw, max_voters: int = 6, max_candidates: int = 6):
    """An instance together with a random size-k committee."""
    instance = draw(instances(max_voters=max_voters, max_candidates=max_candidates))
    members = draw(
        st.permutations(range(instance.num_candidates)).map(
            lambda p: frozenset(p[: instance.committee_size])
        )
    )
    return instance, members
