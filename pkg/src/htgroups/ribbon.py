"""Ribbon braids RB_l = Z^l x| B_l and signed permutations (Z/2)^l x| S_l.

Twists are counted in half twists and indexed by the band's source
position; an odd entry means the band comes out reversed.  In a product the
second factor's twists are pulled back along the first braid:

    (t, b) * (t', b') = (t + t' o pi_b, b b')
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid import (
    BraidWord,
    Permutation,
    block_half_twist,
    cable,
    delete_strand,
    equal as braid_equal,
    format_braid,
    parse_braid,
    parse_permutation,
    _int_list,
)
from .errors import ContextMismatch, ParseError


def _collapse(values: tuple, p: int, d: int) -> tuple:
    return values[: p] + values[p + d - 1:]


@dataclass(frozen=True)
class RibbonBraid:
    twists: tuple[int, ...]
    braid: BraidWord

    def __post_init__(self):
        twists = tuple(int(t) for t in self.twists)
        if len(twists) != self.braid.strands:
            raise ValueError(f"{len(twists)} twist entries for {self.braid.strands} bands")
        object.__setattr__(self, "twists", twists)

    @classmethod
    def identity(cls, l: int) -> "RibbonBraid":
        return cls((0,) * l, BraidWord(l))

    @classmethod
    def from_braid(cls, braid: BraidWord) -> "RibbonBraid":
        return cls((0,) * braid.strands, braid)

    @property
    def size(self) -> int:
        return self.braid.strands

    @property
    def permutation(self) -> Permutation:
        return self.braid.permutation

    def target_of(self, p: int) -> int:
        return self.braid.target_of(p)

    def source_of(self, q: int) -> int:
        return self.braid.source_of(q)

    def compose(self, other: "RibbonBraid") -> "RibbonBraid":
        if other.size != self.size:
            raise ContextMismatch(f"cannot multiply ribbon braids on {self.size} and {other.size} bands")
        perm = self.permutation
        twists = tuple(t + other.twists[perm(p) - 1] for p, t in enumerate(self.twists, start=1))
        return RibbonBraid(twists, self.braid.compose(other.braid))

    __mul__ = compose

    def inverse(self) -> "RibbonBraid":
        perm = self.permutation
        twists = tuple(-self.twists[perm.source_of(p) - 1] for p in range(1, self.size + 1))
        return RibbonBraid(twists, self.braid.inverse())

    def is_oriented(self) -> bool:
        return all(t % 2 == 0 for t in self.twists)

    def total_twist(self) -> int:
        return sum(self.twists)

    def writhe(self) -> int:
        return self.braid.writhe()

    def canonical(self) -> "RibbonBraid":
        return RibbonBraid(self.twists, self.braid.canonical())

    def key(self):
        return self.twists, self.braid.garside

    def split_at(self, p: int, d: int) -> "RibbonBraid":
        return split_band(self, p, d)

    def try_merge_at(self, p: int, q: int, d: int) -> "RibbonBraid | None":
        return try_merge_band(self, p, d, q)

    def append_point(self) -> "RibbonBraid":
        return RibbonBraid(self.twists + (0,), self.braid.append_point())

    def to_signed(self) -> "SignedPermutation":
        return SignedPermutation(tuple(t % 2 for t in self.twists), self.permutation)

    def __str__(self):
        return format_ribbon(self)


def rb_multiply(x: RibbonBraid, y: RibbonBraid) -> RibbonBraid:
    return x.compose(y)


def rb_invert(x: RibbonBraid) -> RibbonBraid:
    return x.inverse()


def rb_equal(x: RibbonBraid, y: RibbonBraid) -> bool:
    return x.twists == y.twists and braid_equal(x.braid, y.braid)


def is_oriented(x: RibbonBraid) -> bool:
    return x.is_oriented()


def total_twist(x: RibbonBraid) -> int:
    return x.total_twist()


def writhe(x: RibbonBraid) -> int:
    return x.writhe()


def split_band(x: RibbonBraid, p: int, d: int) -> RibbonBraid:
    """Split band ``p`` into ``d`` parallel bands.

    Each sub-band inherits the band's twist ``t``; the sub-bands are braided
    by ``Delta^t`` on the block, placed before the cabled braid.
    """
    l = x.size
    if not 1 <= p <= l:
        raise IndexError(f"band {p} out of range 1..{l}")
    t = x.twists[p - 1]
    twists = x.twists[: p - 1] + (t,) * d + x.twists[p:]
    braid = block_half_twist(l + d - 1, p, d, t).compose(cable(x.braid, p, d))
    return RibbonBraid(twists, braid)


def try_merge_band(x: RibbonBraid, p: int, d: int, q: int) -> RibbonBraid | None:
    """Inverse of :func:`split_band` at ``p`` with the block landing on ``q..q+d-1``.

    Returns None when ``x`` is not such a split.
    """
    l = x.size
    if not (1 <= p and p + d - 1 <= l and 1 <= q and q + d - 1 <= l):
        raise IndexError(f"block out of range 1..{l}")
    t = x.twists[p - 1]
    if any(x.twists[p - 1 + k] != t for k in range(d)):
        return None
    braid = x.braid
    if t % 2:
        # an odd twist reverses the block; check on the permutation before any word work
        if any(braid.target_of(p + k) != q + d - 1 - k for k in range(d)):
            return None
    elif any(braid.target_of(p + k) != q + k for k in range(d)):
        return None
    untwisted = block_half_twist(l, p, d, -t).compose(braid)
    core = untwisted
    for _ in range(d - 1):
        core = delete_strand(core, p + 1)
    if not braid_equal(cable(core, p, d), untwisted):
        return None
    return RibbonBraid(_collapse(x.twists, p, d), core)


def format_ribbon(x: RibbonBraid) -> str:
    return "t:" + ",".join(str(t) for t in x.twists) + ";" + format_braid(x.braid)


def parse_ribbon(text: str, pos: int = 0) -> RibbonBraid:
    body = text.strip()
    head, sep, tail = body.partition(";")
    if not head.startswith("t:") or not sep:
        raise ParseError("ribbon literal must look like 't:<ints>;b:<ints>'", pos)
    twists = _int_list(head[2:], pos + 2, "twist")
    braid = parse_braid(tail, len(twists), pos + len(head) + 1)
    return RibbonBraid(tuple(twists), braid)


# --- signed permutations -----------------------------------------------------


@dataclass(frozen=True)
class SignedPermutation:
    """Leaf bijection with a Z/2 flip per source point.

    A flipped point reverses the subtree hanging below it, so splitting a
    flipped point maps its block onto the target block in reverse order.
    """

    signs: tuple[int, ...]
    perm: Permutation

    def __post_init__(self):
        signs = tuple(int(s) % 2 for s in self.signs)
        if len(signs) != self.perm.size:
            raise ValueError(f"{len(signs)} signs for a permutation of {self.perm.size} points")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def identity(cls, l: int) -> "SignedPermutation":
        return cls((0,) * l, Permutation.identity(l))

    @property
    def size(self) -> int:
        return self.perm.size

    @property
    def permutation(self) -> Permutation:
        return self.perm

    def target_of(self, p: int) -> int:
        return self.perm(p)

    def source_of(self, q: int) -> int:
        return self.perm.source_of(q)

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        if other.size != self.size:
            raise ContextMismatch(f"cannot compose signed permutations of {self.size} and {other.size} points")
        signs = tuple((s + other.signs[self.perm(p) - 1]) % 2 for p, s in enumerate(self.signs, start=1))
        return SignedPermutation(signs, self.perm.compose(other.perm))

    __mul__ = compose

    def inverse(self) -> "SignedPermutation":
        signs = tuple(self.signs[self.perm.source_of(p) - 1] for p in range(1, self.size + 1))
        return SignedPermutation(signs, self.perm.inverse())

    def canonical(self) -> "SignedPermutation":
        return self

    def key(self):
        return self.signs, self.perm.images

    def split_at(self, p: int, d: int) -> "SignedPermutation":
        s = self.signs[p - 1]
        perm = self.perm.split_at(p, d, reverse=bool(s))
        return SignedPermutation(self.signs[: p - 1] + (s,) * d + self.signs[p:], perm)

    def try_merge_at(self, p: int, q: int, d: int) -> "SignedPermutation | None":
        s = self.signs[p - 1]
        if any(self.signs[p - 1 + k] != s for k in range(d)):
            return None
        perm = self.perm.try_merge_at(p, q, d, reverse=bool(s))
        if perm is None:
            return None
        return SignedPermutation(_collapse(self.signs, p, d), perm)

    def append_point(self) -> "SignedPermutation":
        return SignedPermutation(self.signs + (0,), self.perm.append_point())

    def __str__(self):
        return format_signed(self)


def format_signed(x: SignedPermutation) -> str:
    return "s:" + ",".join(str(s) for s in x.signs) + ";p:" + ",".join(str(v) for v in x.perm.images)


def parse_signed(text: str, pos: int = 0) -> SignedPermutation:
    body = text.strip()
    head, sep, tail = body.partition(";")
    if not head.startswith("s:") or not sep:
        raise ParseError("signed permutation literal must look like 's:<bits>;p:<images>'", pos)
    signs = _int_list(head[2:], pos + 2, "sign")
    if any(s not in (0, 1) for s in signs):
        raise ParseError("signs must be 0 or 1", pos + 2)
    perm = parse_permutation(tail, pos + len(head) + 1)
    try:
        return SignedPermutation(tuple(signs), perm)
    except ValueError as exc:
        raise ParseError(str(exc), pos) from None


def project_to_signed(x: RibbonBraid) -> SignedPermutation:
    return x.to_signed()


def project_to_braid(x: RibbonBraid) -> BraidWord:
    return x.braid


def project_to_perm(x: RibbonBraid) -> Permutation:
    return x.permutation

