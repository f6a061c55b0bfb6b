"""Core data model: election instances, committees, welfare vectors.

An election instance consists of ``m`` candidates, ``n`` voters and a target
committee size ``k``.  Every voter approves an arbitrary subset of the
candidates (possibly empty).  Candidates are identified by 0-based indices
``0 .. m-1`` internally; the text file format and all command-line output use
1-based indices.

Instance file format
--------------------
* The first content line is a header ``m n k`` (three positive integers,
  whitespace separated).
* The following ``n`` content lines hold one approval ballot each: 1-based
  candidate indices in strictly increasing order, whitespace separated.  An
  empty line denotes an empty ballot.
* Lines whose first non-blank character is ``#`` are comments and are
  ignored, as is trailing whitespace on any line.

``parse_instance`` and ``serialize_instance`` are inverse to each other:
parsing a serialized instance reproduces it exactly (comments are not
preserved).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

#: Exact rational number type used throughout the package.
Rational = Fraction

#: A committee is a plain set of 0-based candidate indices.
Committee = frozenset[int]


class ParseError(ValueError):
    """Raised for malformed instance files or committee literals."""


class SearchBudgetExceeded(RuntimeError):
    """Raised when an exhaustive search would exceed its node budget.

    The message states the budget that was exceeded; callers that expose the
    search (e.g. the command line) should treat this as "instance too large
    for exact analysis" rather than as a property verdict.
    """


@dataclass(frozen=True)
class ElectionInstance:
    """An approval election: candidates, approval ballots, committee size.

    Attributes:
        num_candidates: Number of candidates ``m``; candidates are the
            indices ``0 .. m-1``.
        committee_size: Target committee size ``k`` with ``1 <= k <= m``.
        approvals: One frozenset of candidate indices per voter, in voter
            order.  Empty ballots are allowed.
    """

    num_candidates: int
    committee_size: int
    approvals: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.num_candidates < 1:
            raise ValueError("instance needs at least one candidate")
        if not 1 <= self.committee_size <= self.num_candidates:
            raise ValueError(
                f"committee size {self.committee_size} not in "
                f"1..{self.num_candidates}"
            )
        if len(self.approvals) < 1:
            raise ValueError("instance needs at least one voter")
        object.__setattr__(
            self, "approvals", tuple(frozenset(ballot) for ballot in self.approvals)
        )
        for voter, ballot in enumerate(self.approvals):
            for c in ballot:
                if not 0 <= c < self.num_candidates:
                    raise ValueError(
                        f"ballot of voter {voter} mentions candidate {c}, "
                        f"valid range is 0..{self.num_candidates - 1}"
                    )

    @property
    def num_voters(self) -> int:
        return len(self.approvals)

    @property
    def voters(self) -> range:
        return range(self.num_voters)

    @property
    def candidates(self) -> range:
        return range(self.num_candidates)

    def approvers(self, candidate: int) -> frozenset[int]:
        """Voters that approve ``candidate``."""
        if not 0 <= candidate < self.num_candidates:
            raise ValueError(f"no such candidate: {candidate}")
        return frozenset(
            i for i, ballot in enumerate(self.approvals) if candidate in ballot
        )

    def approved_candidates(self) -> frozenset[int]:
        """Union of all ballots (candidates approved by at least one voter)."""
        out: set[int] = set()
        for ballot in self.approvals:
            out |= ballot
        return frozenset(out)


def welfare_vector(instance: ElectionInstance, committee: Iterable[int]) -> tuple[int, ...]:
    """Number of approved committee members, per voter.

    ``committee`` may be any set of valid candidate indices; it does not have
    to respect the committee size.
    """
    members = frozenset(committee)
    for c in members:
        if not 0 <= c < instance.num_candidates:
            raise ValueError(f"no such candidate: {c}")
    return tuple(len(ballot & members) for ballot in instance.approvals)


def validate_committee(instance: ElectionInstance, committee: Iterable[int]) -> Committee:
    """Check candidate indices and the ``|W| <= k`` bound; return a frozenset."""
    members = frozenset(committee)
    for c in members:
        if not 0 <= c < instance.num_candidates:
            raise ValueError(f"no such candidate: {c}")
    if len(members) > instance.committee_size:
        raise ValueError(
            f"committee has {len(members)} members, size bound is "
            f"{instance.committee_size}"
        )
    return members


def restrict_profile(
    instance: ElectionInstance, voters: Iterable[int], new_k: int
) -> ElectionInstance:
    """Sub-instance on a voter subset, with a new committee size.

    The candidate universe is unchanged (ballots keep their indices), only
    the ballot list shrinks.  Voters are kept in increasing index order.
    """
    chosen = sorted(set(voters))
    if not chosen:
        raise ValueError("cannot restrict to an empty voter set")
    for i in chosen:
        if not 0 <= i < instance.num_voters:
            raise ValueError(f"no such voter: {i}")
    return ElectionInstance(
        num_candidates=instance.num_candidates,
        committee_size=new_k,
        approvals=tuple(instance.approvals[i] for i in chosen),
    )


# ---------------------------------------------------------------------------
# file format


def _content_lines(text: str) -> list[tuple[int, str]]:
    """(1-based line number, rstripped line) for all non-comment lines."""
    out = []
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # a file ending in "\n" is not followed by an empty line
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip()
        if line.lstrip().startswith("#"):
            continue
        out.append((lineno, line))
    return out


def parse_instance(text: str) -> ElectionInstance:
    """Parse the instance file format described in the module docstring.

    Raises ParseError with the offending 1-based line number in the message.
    """
    lines = _content_lines(text)
    if not lines:
        raise ParseError("line 1: missing header 'm n k'")
    header_no, header = lines[0]
    fields = header.split()
    if len(fields) != 3:
        raise ParseError(f"line {header_no}: header must be 'm n k', got {header!r}")
    try:
        m, n, k = (int(f) for f in fields)
    except ValueError:
        raise ParseError(
            f"line {header_no}: header must hold three integers, got {header!r}"
        ) from None
    if m < 1 or n < 1 or k < 1:
        raise ParseError(f"line {header_no}: m, n and k must be positive")
    if k > m:
        raise ParseError(f"line {header_no}: committee size k={k} exceeds m={m}")

    body = lines[1:]
    if len(body) < n:
        raise ParseError(
            f"line {header_no}: header announces {n} ballots, file has {len(body)}"
        )
    for lineno, line in body[n:]:
        if line.strip():
            raise ParseError(f"line {lineno}: unexpected content after {n} ballots")

    approvals = []
    for lineno, line in body[:n]:
        ballot: set[int] = set()
        prev = 0
        for token in line.split():
            try:
                c = int(token)
            except ValueError:
                raise ParseError(
                    f"line {lineno}: candidate index expected, got {token!r}"
                ) from None
            if not 1 <= c <= m:
                raise ParseError(
                    f"line {lineno}: candidate index {c} out of range 1..{m}"
                )
            if c == prev:
                raise ParseError(f"line {lineno}: duplicate candidate {c}")
            if c < prev:
                raise ParseError(
                    f"line {lineno}: candidate indices must be strictly increasing"
                )
            prev = c
            ballot.add(c - 1)
        approvals.append(frozenset(ballot))

    return ElectionInstance(
        num_candidates=m, committee_size=k, approvals=tuple(approvals)
    )


def serialize_instance(instance: ElectionInstance) -> str:
    """Canonical text form (LF line endings, one trailing newline)."""
    lines = [
        f"{instance.num_candidates} {instance.num_voters} {instance.committee_size}"
    ]
    for ballot in instance.approvals:
        lines.append(" ".join(str(c + 1) for c in sorted(ballot)))
    return "\n".join(lines) + "\n"


def instance_digest(instance: ElectionInstance) -> str:
    """SHA-256 hex digest of the canonical serialization."""
    return hashlib.sha256(serialize_instance(instance).encode("ascii")).hexdigest()


def parse_committee(text: str, num_candidates: int) -> Committee:
    """Parse a committee literal: comma-separated 1-based indices, increasing.

    The empty string denotes the empty committee.
    """
    text = text.strip()
    if not text:
        return frozenset()
    members: set[int] = set()
    prev = 0
    for token in text.split(","):
        try:
            c = int(token.strip())
        except ValueError:
            raise ParseError(f"committee literal: bad index {token!r}") from None
        if not 1 <= c <= num_candidates:
            raise ParseError(
                f"committee literal: index {c} out of range 1..{num_candidates}"
            )
        if c <= prev:
            raise ParseError(
                "committee literal: indices must be strictly increasing"
            )
        prev = c
        members.add(c - 1)
    return frozenset(members)


def format_committee(committee: Iterable[int]) -> str:
    """Render a committee as a literal: sorted, 1-based, comma-separated."""
    return ",".join(str(c + 1) for c in sorted(committee))


def format_rational(x: Rational) -> str:
    """Lowest-terms ``num/den`` rendering; integers render without ``/1``."""
    return str(Fraction(x))


def sorted_committees(committees: Iterable[Iterable[int]]) -> list[Committee]:
    """Deterministic order for sets of committees: by sorted member tuple."""
    return sorted((frozenset(c) for c in committees), key=lambda c: tuple(sorted(c)))
