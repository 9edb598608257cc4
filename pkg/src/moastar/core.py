"""Cost vectors, dominance relations, truncation and search labels.

Cost vectors are plain tuples of non-negative ints, compared element-wise
with exact integer arithmetic. Truncated vectors are ordinary tuples as
well; how many leading objectives have been dropped is implied by their
length relative to the instance dimension k.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

MIN_OBJECTIVES = 2
MAX_OBJECTIVES = 8

Vector = tuple  # k or fewer non-negative ints


def weakly_dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff every entry of ``a`` is <= the matching entry of ``b``."""
    if len(a) != len(b):
        raise ValueError(f"vector length mismatch: {len(a)} vs {len(b)}")
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ``a`` weakly dominates ``b`` and the vectors differ."""
    return weakly_dominates(a, b) and tuple(a) != tuple(b)


def truncate(v: Sequence[int]) -> Vector:
    """Drop the first (primary) entry of ``v``.

    A length-1 vector is already a scalar and cannot be truncated further.
    """
    if len(v) < 2:
        raise ValueError("cannot truncate a length-1 vector")
    return tuple(v[1:])


def lex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """Lexicographic ordering: -1 if a < b, 0 if equal, 1 if a > b."""
    if len(a) != len(b):
        raise ValueError(f"vector length mismatch: {len(a)} vs {len(b)}")
    a = tuple(a)
    b = tuple(b)
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def vadd(a: Sequence[int], b: Sequence[int]) -> Vector:
    """Element-wise sum of two equal-length vectors."""
    if len(a) != len(b):
        raise ValueError(f"vector length mismatch: {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def validate_cost_vector(values: Iterable[int], k: int) -> Vector:
    """Normalize ``values`` to a cost tuple, rejecting malformed input."""
    vec = tuple(values)
    if len(vec) != k:
        raise ValueError(f"expected {k} cost entries, got {len(vec)}")
    for entry in vec:
        if not isinstance(entry, int) or isinstance(entry, bool):
            raise ValueError(f"non-integer cost entry: {entry!r}")
        if entry < 0:
            raise ValueError(f"negative cost entry: {entry}")
    return vec


class Label:
    """A search node: a concrete path from the start state to ``state``.

    ``g`` is the accumulated path cost, ``f`` the estimate ``g + h(state)``.
    Parent references form a tree rooted at the start label, so paths can be
    rebuilt after the search without keeping an explicit closed list.
    """

    __slots__ = ("state", "g", "f", "parent")

    def __init__(self, state: int, g: Vector, f: Vector,
                 parent: Optional["Label"] = None):
        self.state = state
        self.g = g
        self.f = f
        self.parent = parent

    def path(self) -> tuple[int, ...]:
        """State sequence from the start state to this label's state."""
        states = []
        node: Optional[Label] = self
        while node is not None:
            states.append(node.state)
            node = node.parent
        states.reverse()
        return tuple(states)

    def __repr__(self) -> str:
        return f"Label(state={self.state}, g={self.g}, f={self.f})"
