"""Artin braid groups B_l: words, permutations, Garside normal form, handle reduction.

Conventions:

* A letter ``+q`` is the crossing where the strand at position ``q`` passes
  over the strand at position ``q+1``; ``-q`` is its inverse.  Both swap the
  two positions.
* Words are read left to right.  ``Permutation.images[p-1]`` is the final
  position of the strand starting at position ``p``, so the permutation of
  ``uv`` is "first u, then v".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import ContextMismatch, ParseError


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..l}``, read as source position -> target position."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, l: int) -> "Permutation":
        return cls(tuple(range(1, l + 1)))

    @classmethod
    def transposition(cls, l: int, a: int, b: int) -> "Permutation":
        im = list(range(1, l + 1))
        im[a - 1], im[b - 1] = im[b - 1], im[a - 1]
        return cls(tuple(im))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, p: int) -> int:
        return self.images[p - 1]

    def target_of(self, p: int) -> int:
        return self.images[p - 1]

    @cached_property
    def _inverse_images(self) -> tuple[int, ...]:
        inv = [0] * len(self.images)
        for s, t in enumerate(self.images, start=1):
            inv[t - 1] = s
        return tuple(inv)

    def source_of(self, q: int) -> int:
        return self._inverse_images[q - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self`` first, then ``other``."""
        if other.size != self.size:
            raise ContextMismatch(f"cannot compose permutations of {self.size} and {other.size} points")
        return Permutation(tuple(other.images[t - 1] for t in self.images))

    def inverse(self) -> "Permutation":
        return Permutation(self._inverse_images)

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.size + 1))

    def inversions(self) -> int:
        im = self.images
        return sum(1 for a in range(len(im)) for b in range(a + 1, len(im)) if im[a] > im[b])

    # decoration interface -------------------------------------------------

    def split_at(self, p: int, d: int, reverse: bool = False) -> "Permutation":
        """Replace source point ``p`` by a block of ``d`` points.

        The block lands on the block replacing ``self(p)``, in order, or in
        reverse order when ``reverse`` is set.
        """
        l = self.size
        if not 1 <= p <= l:
            raise IndexError(f"point {p} out of range 1..{l}")
        q = self.images[p - 1]
        shift = d - 1
        out = []
        for s in range(1, l + 1):
            t = self.images[s - 1]
            if s == p:
                block = range(q + shift, q - 1, -1) if reverse else range(q, q + d)
                out.extend(block)
            else:
                out.append(t if t < q else t + shift)
        return Permutation(tuple(out))

    def try_merge_at(self, p: int, q: int, d: int, reverse: bool = False) -> "Permutation | None":
        """Collapse source block ``p..p+d-1`` onto target block ``q..q+d-1``.

        Returns None unless the block maps onto the target block in order
        (reversed when ``reverse`` is set).
        """
        l = self.size
        if not (1 <= p and p + d - 1 <= l and 1 <= q and q + d - 1 <= l):
            raise IndexError(f"block out of range 1..{l}")
        for k in range(d):
            want = q + d - 1 - k if reverse else q + k
            if self.images[p - 1 + k] != want:
                return None
        shift = d - 1
        out = []
        for s in range(1, l + 1):
            if p < s < p + d:
                continue
            if s == p:
                out.append(q)
                continue
            t = self.images[s - 1]
            out.append(t if t < q else t - shift)
        return Permutation(tuple(out))

    def append_point(self) -> "Permutation":
        return Permutation(self.images + (self.size + 1,))

    def canonical(self) -> "Permutation":
        return self

    def key(self):
        return self.images

    def __str__(self):
        return format_permutation(self)


def format_permutation(perm: Permutation) -> str:
    return "p:" + ",".join(str(v) for v in perm.images)


def _int_list(text: str, pos: int, what: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    out = []
    offset = 0
    for item in text.split(","):
        try:
            out.append(int(item))
        except ValueError:
            raise ParseError(f"bad {what} entry {item.strip()!r}", pos + offset) from None
        offset += len(item) + 1
    return out


def parse_permutation(text: str, pos: int = 0) -> Permutation:
    body = text.strip()
    if not body.startswith("p:"):
        raise ParseError("permutation literal must start with 'p:'", pos)
    images = _int_list(body[2:], pos + 2, "permutation")
    try:
        return Permutation(tuple(images))
    except ValueError as exc:
        raise ParseError(str(exc), pos) from None


# --- braid words -----------------------------------------------------------


@dataclass(frozen=True)
class GarsideForm:
    """Left normal form ``Delta^infimum * factors[0] * ... * factors[-1]``.

    Each factor is a permutation braid given by its 1-based position map.
    """

    strands: int
    infimum: int
    factors: tuple[tuple[int, ...], ...]

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def is_identity(self) -> bool:
        return self.infimum == 0 and not self.factors

    def word(self) -> "BraidWord":
        """Spell the form as a braid word (the package's canonical word)."""
        n = self.strands
        letters: list[int] = []
        if n >= 2 and self.infimum:
            delta = permutation_braid_letters(tuple(range(n, 0, -1)))
            if self.infimum > 0:
                letters.extend(delta * self.infimum)
            else:
                inv = [-g for g in reversed(delta)]
                letters.extend(inv * (-self.infimum))
        for f in self.factors:
            letters.extend(permutation_braid_letters(f))
        return BraidWord(n, tuple(letters))


def permutation_braid_letters(images: Sequence[int]) -> list[int]:
    """Positive word realising the permutation with one crossing per inversion.

    Spelled by repeatedly uncrossing the leftmost descent.
    """
    arr = list(images)
    out = []
    i = 0
    while i < len(arr) - 1:
        if arr[i] > arr[i + 1]:
            arr[i], arr[i + 1] = arr[i + 1], arr[i]
            out.append(i + 1)
            i = max(i - 1, 0)
        else:
            i += 1
    return out


def starting_set(images: Sequence[int]) -> frozenset[int]:
    """Generators ``q`` that left-divide the permutation braid."""
    return frozenset(q for q in range(1, len(images)) if images[q - 1] > images[q])


def finishing_set(images: Sequence[int]) -> frozenset[int]:
    """Generators ``q`` that right-divide the permutation braid."""
    inv = [0] * len(images)
    for s, t in enumerate(images, start=1):
        inv[t - 1] = s
    return starting_set(inv)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError(f"a braid needs at least one strand, got {self.strands}")
        letters = tuple(int(g) for g in self.letters)
        for g in letters:
            if g == 0 or abs(g) >= self.strands:
                raise ValueError(f"letter {g} out of range for {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def identity(cls, l: int) -> "BraidWord":
        return cls(l, ())

    @classmethod
    def from_permutation(cls, perm: Permutation) -> "BraidWord":
        """Positive permutation braid of ``perm`` (crossing-minimal section)."""
        return cls(perm.size, tuple(permutation_braid_letters(perm.images)))

    @property
    def size(self) -> int:
        return self.strands

    def __len__(self):
        return len(self.letters)

    @cached_property
    def permutation(self) -> Permutation:
        if self.strands == 1:
            return Permutation((1,))
        arr = _kernels.permutation_of(np.asarray(self.letters, dtype=np.int64), self.strands)
        return Permutation(tuple(int(v) + 1 for v in arr))

    @cached_property
    def garside(self) -> GarsideForm:
        inf, fac = _kernels.normal_form(np.asarray(self.letters, dtype=np.int64), self.strands)
        factors = tuple(tuple(int(v) + 1 for v in row) for row in fac)
        return GarsideForm(self.strands, int(inf), factors)

    def target_of(self, p: int) -> int:
        return self.permutation(p)

    def source_of(self, q: int) -> int:
        return self.permutation.source_of(q)

    def compose(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise ContextMismatch(f"cannot multiply braids on {self.strands} and {other.strands} strands")
        return BraidWord(self.strands, self.letters + other.letters)

    __mul__ = compose

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-g for g in reversed(self.letters)))

    def writhe(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.letters)

    def is_trivial(self) -> bool:
        return self.garside.is_identity()

    def canonical(self) -> "BraidWord":
        return self.garside.word()

    def key(self):
        return self.garside

    # decoration interface -------------------------------------------------

    def split_at(self, p: int, d: int) -> "BraidWord":
        return cable(self, p, d)

    def try_merge_at(self, p: int, q: int, d: int) -> "BraidWord | None":
        """Uncable the block ``p..p+d-1`` provided it lands on ``q..q+d-1`` in order."""
        l = self.strands
        if not (1 <= p and p + d - 1 <= l and 1 <= q and q + d - 1 <= l):
            raise IndexError(f"block out of range 1..{l}")
        perm = self.permutation
        if any(perm(p + k) != q + k for k in range(d)):
            return None
        core = self
        for _ in range(d - 1):
            core = delete_strand(core, p + 1)
        if not equal(cable(core, p, d), self):
            return None
        return core

    def append_point(self) -> "BraidWord":
        return BraidWord(self.strands + 1, self.letters)

    def __str__(self):
        return format_braid(self)


def multiply(u: BraidWord, v: BraidWord) -> BraidWord:
    return u.compose(v)


def invert(w: BraidWord) -> BraidWord:
    return w.inverse()


def permutation_of(w: BraidWord) -> Permutation:
    return w.permutation


def garside_form(w: BraidWord) -> GarsideForm:
    return w.garside


def equal(u: BraidWord, v: BraidWord) -> bool:
    if u.strands != v.strands:
        raise ContextMismatch(f"cannot compare braids on {u.strands} and {v.strands} strands")
    if u.letters == v.letters:
        return True
    if u.permutation != v.permutation or u.writhe() != v.writhe():
        return False
    return u.garside == v.garside


def is_left_weighted(form: GarsideForm) -> bool:
    for a, b in zip(form.factors, form.factors[1:]):
        if not starting_set(b) <= finishing_set(a):
            return False
    return True


def handle_reduce(w: BraidWord) -> BraidWord:
    """Dehornoy handle reduction; the result contains no handle.

    Always reduces the handle whose closing letter comes first, which is a
    permitted handle.
    """
    n = w.strands
    word = list(w.letters)
    while True:
        found = None
        # top[g] = index of the latest letter with generator <= g
        top = [-1] * (n + 1)
        for k, x in enumerate(word):
            g = abs(x)
            j = top[g]
            if j >= 0 and word[j] == -x:
                found = (j, k)
                break
            for h in range(g, n):
                top[h] = k
        if found is None:
            return BraidWord(n, tuple(word))
        j, k = found
        e = 1 if word[j] > 0 else -1
        i = abs(word[j])
        middle = []
        for x in word[j + 1:k]:
            if abs(x) == i + 1:
                piece = (-e * (i + 1), (1 if x > 0 else -1) * i, e * (i + 1))
                for y in piece:
                    if middle and middle[-1] == -y:
                        middle.pop()
                    else:
                        middle.append(y)
            else:
                middle.append(x)
        word[j:k + 1] = middle


def handle_reduce_is_trivial(w: BraidWord) -> bool:
    return not handle_reduce(w).letters


def delete_strand(w: BraidWord, s: int) -> BraidWord:
    """Remove the strand starting at position ``s``; result lives in B_{l-1}."""
    if not 1 <= s <= w.strands:
        raise IndexError(f"strand {s} out of range 1..{w.strands}")
    if w.strands == 1:
        raise ValueError("cannot delete the only strand")
    p = s
    out = []
    for g in w.letters:
        q = abs(g)
        if q == p - 1:
            p -= 1
        elif q == p:
            p += 1
        elif q < p - 1:
            out.append(g)
        else:
            out.append(g - 1 if g > 0 else g + 1)
    return BraidWord(w.strands - 1, tuple(out))


def cable(w: BraidWord, i: int, d: int) -> BraidWord:
    """Replace the strand starting at position ``i`` by ``d`` parallel strands."""
    if not 1 <= i <= w.strands:
        raise IndexError(f"strand {i} out of range 1..{w.strands}")
    if d < 1:
        raise ValueError(f"cable width must be positive, got {d}")
    c = i
    shift = d - 1
    out = []
    for g in w.letters:
        q = abs(g)
        sgn = 1 if g > 0 else -1
        if q < c - 1:
            out.append(g)
        elif q > c:
            out.append(sgn * (q + shift))
        elif q == c - 1:
            out.extend(sgn * k for k in range(c - 1, c + d - 1))
            c -= 1
        else:
            out.extend(sgn * k for k in range(c + d - 1, c - 1, -1))
            c += 1
    return BraidWord(w.strands + shift, tuple(out))


def block_half_twist(l: int, i: int, d: int, t: int = 1) -> BraidWord:
    """``t``-th power of the positive half twist on positions ``i..i+d-1``."""
    if not (1 <= i and i + d - 1 <= l):
        raise IndexError(f"block {i}..{i + d - 1} out of range 1..{l}")
    delta = []
    for top in range(i, i + d - 1):
        delta.extend(range(top, i - 1, -1))
    if t < 0:
        delta = [-g for g in reversed(delta)]
    return BraidWord(l, tuple(delta) * abs(t))


def linking_matrix(w: BraidWord) -> np.ndarray:
    """Signed crossing counts between strands, indexed by starting position."""
    n = w.strands
    at = list(range(n))
    mat = np.zeros((n, n), dtype=np.int64)
    for g in w.letters:
        q = abs(g) - 1
        a, b = at[q], at[q + 1]
        sgn = 1 if g > 0 else -1
        mat[a, b] += sgn
        mat[b, a] += sgn
        at[q], at[q + 1] = b, a
    return mat


def format_braid(w: BraidWord) -> str:
    return "b:" + ",".join(str(g) for g in w.letters)


def parse_braid(text: str, strands: int, pos: int = 0) -> BraidWord:
    body = text.strip()
    if not body.startswith("b:"):
        raise ParseError("braid literal must start with 'b:'", pos)
    letters = _int_list(body[2:], pos + 2, "braid")
    try:
        return BraidWord(strands, tuple(letters))
    except ValueError as exc:
        raise ParseError(str(exc), pos) from None


def random_rewrite(w: BraidWord, rng, moves: int) -> BraidWord:
    """Apply ``moves`` random braid-relation moves; the element is unchanged.

    Moves: insert or cancel a pair ``g, -g``, commute distant neighbours, and
    swap ``aba <-> bab`` for adjacent generators of equal sign.
    """
    n = w.strands
    word = list(w.letters)
    for _ in range(moves):
        kind = rng.below(4)
        if kind == 0 and n >= 2:
            g = (1 + rng.below(n - 1)) * (1 if rng.below(2) else -1)
            k = rng.below(len(word) + 1)
            word[k:k] = [g, -g]
            continue
        if len(word) < 2:
            continue
        k = rng.below(len(word) - 1)
        a, b = word[k], word[k + 1]
        if kind == 1 and a == -b:
            del word[k:k + 2]
        elif kind == 2 and abs(abs(a) - abs(b)) >= 2:
            word[k], word[k + 1] = b, a
        elif kind == 3 and k + 2 < len(word):
            c = word[k + 2]
            if a == c and abs(abs(a) - abs(b)) == 1 and (a > 0) == (b > 0):
                word[k:k + 3] = [b, a, b]
    return BraidWord(n, tuple(word))


def random_word(rng, strands: int, length: int) -> BraidWord:
    if strands < 2:
        return BraidWord(strands)
    letters = []
    for _ in range(length):
        v = rng.below(2 * (strands - 1))
        letters.append((v // 2 + 1) * (1 if v % 2 == 0 else -1))
    return BraidWord(strands, tuple(letters))

