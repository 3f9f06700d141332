"""Ground-truth permutations and Cartesian powers, and a coverage scorer.

The scorer measures how much of an expected enumeration a free-text
response lists.  A response tuple counts only if it matches an expected
tuple token for token, in order; tuples may appear in any order and
duplicates count once.
"""

from __future__ import annotations

import itertools
import random
import re
import string
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class CoverageReport:
    expected_count: int
    matched_count: int
    unparsed_lines: int = 0

    @property
    def fraction(self) -> float:
        if self.expected_count == 0:
            return 1.0
        return self.matched_count / self.expected_count


def _check_tokens(items: Sequence[str]) -> list[str]:
    items = list(items)
    for tok in items:
        if not tok or any(c.isspace() for c in tok):
            raise ValueError(f"bad token {tok!r}")
    if len(set(items)) != len(items):
        raise ValueError("tokens must be distinct")
    return items


def permutations(items: Sequence[str]) -> Iterator[tuple[str, ...]]:
    """All m! orderings in lexicographic order (the first is the sorted input)."""
    return itertools.permutations(sorted(_check_tokens(items)))


def cartesian_power(pool: Sequence[str], n: int) -> Iterator[tuple[str, ...]]:
    """All m**n tuples in odometer order over the pool's given order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return itertools.product(_check_tokens(pool), repeat=n)


def random_tokens(m: int, seed: int = 0, length: int = 3) -> list[str]:
    rng = random.Random(seed)
    out: list[str] = []
    while len(out) < m:
        tok = "".join(rng.choice(string.ascii_lowercase) for _ in range(length))
        if tok not in out:
            out.append(tok)
    return out


def render(tuples: Iterable[Sequence[str]]) -> str:
    return "\n".join(", ".join(t) for t in tuples) + "\n"


_GROUP = re.compile(r"[\[(]([^\[\]()]*)[\])]")
_SPLIT = re.compile(r"[\s,]+")
_STRIP = "'\"`*.;:"


def _tokens(chunk: str) -> tuple[str, ...]:
    return tuple(t.strip(_STRIP) for t in _SPLIT.split(chunk) if t.strip(_STRIP))


def extract_tuples(response_text: str) -> tuple[list[tuple[str, ...]], int]:
    """Candidate tuples per line plus the count of lines that yielded none."""
    found: list[tuple[str, ...]] = []
    unparsed = 0
    for line in response_text.splitlines():
        if not line.strip():
            continue
        groups = _GROUP.findall(line)
        chunks = groups if groups else [re.sub(r"^\s*(?:\d+[.)]|[-*•])\s+", "", line)]
        tuples = [t for t in (_tokens(c) for c in chunks) if t]
        if tuples:
            found.extend(tuples)
        else:
            unparsed += 1
    return found, unparsed


def score_coverage(expected: Iterable[Sequence[str]], response_text: str) -> CoverageReport:
    want = {tuple(t) for t in expected}
    found, unparsed = extract_tuples(response_text)
    matched = want.intersection(found)
    return CoverageReport(len(want), len(matched), unparsed)
