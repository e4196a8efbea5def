"""Paired forest diagrams for V_{d,r}, V_{d,r}(Z/2), bV_{d,r}, RV_{d,r} and RV+_{d,r}.

A diagram ``(F-, decoration, F+)`` joins the leaves of the source forest to
the leaves of the target forest.  The decoration is a permutation, a signed
permutation, a braid or a ribbon braid depending on the group; all of them
share the methods ``target_of``, ``source_of``, ``compose``, ``inverse``,
``split_at``, ``try_merge_at``, ``append_point``, ``canonical`` and ``key``.

Group elements are diagrams up to expansion/reduction.  :func:`reduce`
returns the reduced representative with a canonical decoration, and that is
what every public operation hands back.  Dataclass ``==`` on diagrams is
syntactic; use :func:`equals` for equality in the group.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace

from . import forest as fo
from .braid import BraidWord, Permutation, parse_braid, parse_permutation, random_word
from .errors import ContextMismatch, ParseError
from .forest import Forest
from .ribbon import RibbonBraid, SignedPermutation, parse_ribbon, parse_signed
from .rng import SplitMix64


class Variant(enum.Enum):
    PERM = "V"
    SIGNED_PERM = "V2"
    BRAID = "bV"
    RIBBON = "RV"
    RIBBON_ORIENTED = "RV+"

    @property
    def prefix(self) -> str:
        return self.value

    @property
    def braided(self) -> bool:
        return self in (Variant.BRAID, Variant.RIBBON, Variant.RIBBON_ORIENTED)

    @property
    def ribbon(self) -> bool:
        return self in (Variant.RIBBON, Variant.RIBBON_ORIENTED)

    @classmethod
    def from_prefix(cls, text: str) -> "Variant":
        for v in cls:
            if v.value == text:
                return v
        raise ValueError(f"unknown group prefix {text!r}")


_DECORATION_TYPE = {
    Variant.PERM: Permutation,
    Variant.SIGNED_PERM: SignedPermutation,
    Variant.BRAID: BraidWord,
    Variant.RIBBON: RibbonBraid,
    Variant.RIBBON_ORIENTED: RibbonBraid,
}

# Decoration-forgetting maps that respect expansion.  See README for why
# ribbon -> braid, ribbon -> V and V(Z/2) -> V are absent.
QUOTIENTS = {
    (Variant.RIBBON, Variant.SIGNED_PERM): lambda dec: dec.to_signed(),
    (Variant.RIBBON_ORIENTED, Variant.PERM): lambda dec: dec.permutation,
    (Variant.BRAID, Variant.PERM): lambda dec: dec.permutation,
}


@dataclass(frozen=True)
class GroupContext:
    d: int
    r: int
    variant: Variant

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"arity d must be at least 2, got {self.d}")
        if self.r < 1:
            raise ValueError(f"root count r must be at least 1, got {self.r}")

    def __str__(self):
        return f"{self.variant.prefix}{{{self.d},{self.r}}}"

    def with_r(self, r: int) -> "GroupContext":
        return GroupContext(self.d, r, self.variant)

    def with_variant(self, variant: Variant) -> "GroupContext":
        return GroupContext(self.d, self.r, variant)

    def identity_decoration(self, l: int):
        return _DECORATION_TYPE[self.variant].identity(l)


_CTX_RE = re.compile(r"\s*(RV\+|RV|bV|V2|V)\{\s*(\d+)\s*,\s*(\d+)\s*\}")


def read_context(text: str, pos: int = 0) -> tuple[GroupContext | None, int]:
    m = _CTX_RE.match(text, pos)
    if not m:
        return None, pos
    try:
        ctx = GroupContext(int(m.group(2)), int(m.group(3)), Variant.from_prefix(m.group(1)))
    except ValueError as exc:
        raise ParseError(str(exc), pos) from None
    return ctx, m.end()


def parse_context(text: str) -> GroupContext:
    ctx, end = read_context(text)
    if ctx is None or text[end:].strip():
        raise ParseError(f"bad group context {text!r}; expected e.g. 'RV{{2,1}}'", end if ctx else 0)
    return ctx


@dataclass(frozen=True)
class Diagram:
    ctx: GroupContext
    source: Forest
    decoration: object
    target: Forest

    def __post_init__(self):
        ctx = self.ctx
        for name, f in (("source", self.source), ("target", self.target)):
            if (f.d, f.r) != (ctx.d, ctx.r):
                raise ContextMismatch(f"{name} forest is a ({f.d},{f.r})-forest, context is {ctx}")
        if self.source.leaf_count != self.target.leaf_count:
            raise ValueError(
                f"forests have {self.source.leaf_count} and {self.target.leaf_count} leaves"
            )
        dec = self.decoration
        if not isinstance(dec, _DECORATION_TYPE[ctx.variant]):
            raise TypeError(f"{type(dec).__name__} cannot decorate an element of {ctx}")
        if dec.size != self.source.leaf_count:
            raise ValueError(f"decoration on {dec.size} points, forests have {self.source.leaf_count} leaves")
        if ctx.variant is Variant.RIBBON_ORIENTED and not dec.is_oriented():
            raise ValueError("oriented ribbon elements need even twists")

    @property
    def leaf_count(self) -> int:
        return self.source.leaf_count

    def __mul__(self, other: "Diagram") -> "Diagram":
        return multiply(self, other)

    def inverse(self) -> "Diagram":
        return invert(self)

    def __str__(self):
        return format_diagram(self)


def _check_same(x: Diagram, y: Diagram) -> None:
    if x.ctx != y.ctx:
        raise ContextMismatch(f"elements of {x.ctx} and {y.ctx} cannot be combined")


def identity(ctx: GroupContext) -> Diagram:
    f = Forest.trivial(ctx.d, ctx.r)
    return Diagram(ctx, f, ctx.identity_decoration(ctx.r), f)


def expand(x: Diagram, i: int) -> Diagram:
    """Split source leaf ``i``, its partner in the target, and the decoration."""
    if not 1 <= i <= x.leaf_count:
        raise IndexError(f"leaf {i} out of range 1..{x.leaf_count}")
    d = x.ctx.d
    j = x.decoration.target_of(i)
    return Diagram(
        x.ctx,
        fo.split_leaf(x.source, i),
        x.decoration.split_at(i, d),
        fo.split_leaf(x.target, j),
    )


def expand_sequence(x: Diagram, leaves) -> Diagram:
    for i in leaves:
        x = expand(x, i)
    return x


def _merge_candidates(x: Diagram):
    """Yield ``(i, q)``: a source caret at ``i`` whose leaves land on a target caret at ``q``."""
    d = x.ctx.d
    dec = x.decoration
    for _, i in fo.elementary_carets(x.source):
        targets = [dec.target_of(i + k) for k in range(d)]
        q = min(targets)
        if max(targets) - q != d - 1:
            continue
        if fo.has_elementary_caret(x.target, q):
            yield i, q


def _merge(x: Diagram, i: int, q: int, dec) -> Diagram:
    return Diagram(
        x.ctx,
        fo.remove_elementary_caret(x.source, i),
        dec,
        fo.remove_elementary_caret(x.target, q),
    )


def reduce(x: Diagram) -> Diagram:
    """Reduced representative with canonical decoration.

    Scans source carets by leftmost leaf and restarts after every merge.
    """
    d = x.ctx.d
    while True:
        for i, q in _merge_candidates(x):
            merged = x.decoration.try_merge_at(i, q, d)
            if merged is not None:
                x = _merge(x, i, q, merged)
                break
        else:
            break
    return replace(x, decoration=x.decoration.canonical())


def reducible_pairs(x: Diagram) -> list[tuple[int, int]]:
    """Every (source caret, target caret) pair that admits a reduction, by brute force."""
    d = x.ctx.d
    out = []
    for _, i in fo.elementary_carets(x.source):
        for _, q in fo.elementary_carets(x.target):
            if x.decoration.try_merge_at(i, q, d) is not None:
                out.append((i, q))
    return out


def is_reduced(x: Diagram) -> bool:
    return not reducible_pairs(x)


def multiply(x: Diagram, y: Diagram) -> Diagram:
    """Product "x then y": expand both to a common middle forest and compose."""
    _check_same(x, y)
    _, exp_x, exp_y = fo.join(x.target, y.source)
    for j in exp_x:
        x = expand(x, x.decoration.source_of(j))
    for i in exp_y:
        y = expand(y, i)
    return reduce(Diagram(x.ctx, x.source, x.decoration.compose(y.decoration), y.target))


def invert(x: Diagram) -> Diagram:
    return reduce(Diagram(x.ctx, x.target, x.decoration.inverse(), x.source))


def power(x: Diagram, n: int) -> Diagram:
    base = x if n >= 0 else invert(x)
    out = identity(x.ctx)
    for _ in range(abs(n)):
        out = multiply(out, base)
    return out


def canonical_key(x: Diagram):
    x = reduce(x)
    return x.ctx, x.source, x.target, x.decoration.key()


def equals(x: Diagram, y: Diagram) -> bool:
    _check_same(x, y)
    return canonical_key(x) == canonical_key(y)


def is_identity(x: Diagram) -> bool:
    return canonical_key(x) == canonical_key(identity(x.ctx))


def equals_by_quotient(x: Diagram, y: Diagram) -> bool:
    """Fallback equality: ``x y^-1`` reduces to the identity."""
    _check_same(x, y)
    return is_identity(multiply(x, invert(y)))


def project(x: Diagram, variant: Variant) -> Diagram:
    """Image under a quotient map that forgets part of the decoration."""
    src = x.ctx.variant
    if variant is src:
        return reduce(x)
    try:
        forget = QUOTIENTS[(src, variant)]
    except KeyError:
        raise ValueError(f"no quotient map from {src.prefix} to {variant.prefix}") from None
    return reduce(Diagram(x.ctx.with_variant(variant), x.source, forget(x.decoration), x.target))


def lift(v: Diagram, variant: Variant) -> Diagram:
    """Section of the projection: same forests, positive permutation braid, no twists."""
    if v.ctx.variant is not Variant.PERM:
        raise ValueError(f"lift starts from V, not {v.ctx.variant.prefix}")
    perm = v.decoration
    if variant is Variant.PERM:
        dec = perm
    elif variant is Variant.SIGNED_PERM:
        dec = SignedPermutation((0,) * perm.size, perm)
    elif variant is Variant.BRAID:
        dec = BraidWord.from_permutation(perm)
    else:
        dec = RibbonBraid.from_braid(BraidWord.from_permutation(perm))
    return reduce(Diagram(v.ctx.with_variant(variant), v.source, dec, v.target))


def stabilize(x: Diagram) -> Diagram:
    """Append a trivial root on both sides, joined by an untouched strand."""
    return Diagram(
        x.ctx.with_r(x.ctx.r + 1),
        fo.append_trivial_root(x.source),
        x.decoration.append_point(),
        fo.append_trivial_root(x.target),
    )


def shift_iso(x: Diagram) -> Diagram:
    """Isomorphism onto the group with ``r + d - 1`` roots: unwrap the carets at root 1."""
    if not x.source.roots[0]:
        x = expand(x, 1)
    if not x.target.roots[0]:
        x = expand(x, x.decoration.source_of(1))
    ctx = x.ctx.with_r(x.ctx.r + x.ctx.d - 1)
    return reduce(Diagram(ctx, fo.unwrap_first_root(x.source), x.decoration, fo.unwrap_first_root(x.target)))


def shift_iso_inverse(x: Diagram) -> Diagram:
    d = x.ctx.d
    if x.ctx.r < d:
        raise ValueError(f"{x.ctx} has fewer than d={d} roots")
    ctx = x.ctx.with_r(x.ctx.r - d + 1)
    return reduce(Diagram(ctx, fo.wrap_first_roots(x.source), x.decoration, fo.wrap_first_roots(x.target)))


def _random_forest(rng: SplitMix64, d: int, r: int, carets: int) -> Forest:
    f = Forest.trivial(d, r)
    for _ in range(carets):
        f = fo.split_leaf(f, 1 + rng.below(f.leaf_count))
    return f


def random_element(
    ctx: GroupContext,
    carets: int = 2,
    length: int = 4,
    twist_bound: int = 1,
    seed: int | SplitMix64 = 0,
) -> Diagram:
    """Seeded random element, returned reduced.

    Draw order: source splits, target splits, then the decoration.  With
    ``length == 0`` the decoration is trivial, so ``carets == length == 0``
    always gives the identity.  Otherwise permutations are a Fisher-Yates
    shuffle (then one sign draw per point for V(Z/2)), braids are ``length``
    uniform letters (then twists in ``[-twist_bound, twist_bound]``,
    doubled for RV+).
    """
    if carets < 0 or length < 0:
        raise ValueError("carets and length must be non-negative")
    # any generator with the SplitMix64 interface may be passed in
    rng = SplitMix64(seed) if isinstance(seed, int) else seed
    source = _random_forest(rng, ctx.d, ctx.r, carets)
    target = _random_forest(rng, ctx.d, ctx.r, carets)
    l = source.leaf_count
    v = ctx.variant
    if length == 0:
        dec = ctx.identity_decoration(l)
    elif v is Variant.PERM:
        dec = Permutation(tuple(rng.shuffle(list(range(1, l + 1)))))
    elif v is Variant.SIGNED_PERM:
        perm = Permutation(tuple(rng.shuffle(list(range(1, l + 1)))))
        dec = SignedPermutation(tuple(rng.below(2) for _ in range(l)), perm)
    elif v is Variant.BRAID:
        dec = random_word(rng, l, length)
    else:
        braid = random_word(rng, l, length)
        scale = 2 if v is Variant.RIBBON_ORIENTED else 1
        twists = tuple(scale * rng.between(-twist_bound, twist_bound) for _ in range(l))
        dec = RibbonBraid(twists, braid)
    return reduce(Diagram(ctx, source, dec, target))


def cantor_action(x: Diagram, point) -> tuple[int, tuple[int, ...]]:
    """Image of a point ``(root, word)`` of the boundary Cantor set, for V and V(Z/2).

    The word must reach at least the source leaf whose cylinder holds it.
    """
    v = x.ctx.variant
    if v not in (Variant.PERM, Variant.SIGNED_PERM):
        raise ValueError(f"the Cantor action is defined here for V and V(Z/2) only, not {v.prefix}")
    root, word = point
    word = tuple(word)
    d = x.ctx.d
    if not 1 <= root <= x.ctx.r:
        raise ValueError(f"root {root} out of range 1..{x.ctx.r}")
    if any(not 1 <= c <= d for c in word):
        raise ValueError(f"letters must lie in 1..{d}")
    t = x.source.roots[root - 1]
    depth = 0
    while t:
        if depth >= len(word):
            raise ValueError(f"point {root}:{word} is shallower than the source forest")
        t = t[word[depth] - 1]
        depth += 1
    i = fo.address_to_leaf(x.source, (root, word[:depth]))
    a = fo.leaf_address(x.target, x.decoration.target_of(i))
    suffix = word[depth:]
    if v is Variant.SIGNED_PERM and x.decoration.signs[i - 1]:
        suffix = tuple(d + 1 - c for c in suffix)
    return a.root, a.path + suffix


def invariants(x: Diagram) -> dict:
    """Summary of the reduced representative: leaves, twist, writhe, permutation."""
    x = reduce(x)
    dec = x.decoration
    v = x.ctx.variant
    if v is Variant.PERM:
        perm = dec
    else:
        perm = dec.permutation
    return {
        "l": x.leaf_count,
        "total_twist": dec.total_twist() if v.ribbon else 0,
        "writhe": dec.writhe() if v.braided else 0,
        "perm": list(perm.images),
    }


# --- literals --------------------------------------------------------------


def format_decoration(dec) -> str:
    return str(dec)


def format_diagram(x: Diagram, with_context: bool = True) -> str:
    body = f"({fo.serialize_forest(x.source)}|{format_decoration(x.decoration)}|{fo.serialize_forest(x.target)})"
    return f"{x.ctx}{body}" if with_context else body


def _parse_decoration(text: str, ctx: GroupContext, l: int, pos: int):
    v = ctx.variant
    if v is Variant.PERM:
        return parse_permutation(text, pos)
    if v is Variant.SIGNED_PERM:
        return parse_signed(text, pos)
    if v is Variant.BRAID:
        return parse_braid(text, l, pos)
    return parse_ribbon(text, pos)


def parse_diagram(text: str, ctx: GroupContext | None = None) -> Diagram:
    """Parse ``[ctx](forest|decoration|forest)``; an inline context must agree with ``ctx``."""
    inline, pos = read_context(text)
    if inline is not None:
        if ctx is not None and inline != ctx:
            raise ParseError(f"element is written in {inline} but the context is {ctx}", 0)
        ctx = inline
    if ctx is None:
        raise ParseError("no group context given", 0)
    rd = fo._Reader(text, pos)
    rd.expect("(")
    source, pos = fo.read_forest(text, ctx.d, ctx.r, rd.pos)
    rd = fo._Reader(text, pos)
    rd.expect("|")
    bar = text.find("|", rd.pos)
    if bar < 0:
        raise ParseError("expected '|' after the decoration", len(text))
    dec_pos = rd.pos
    dec_text = text[dec_pos:bar]
    target, pos = fo.read_forest(text, ctx.d, ctx.r, bar + 1)
    rd = fo._Reader(text, pos)
    rd.expect(")")
    rd.skip()
    if rd.pos != len(text):
        raise ParseError(f"trailing input {text[rd.pos:]!r}", rd.pos)
    l = source.leaf_count
    if target.leaf_count != l:
        raise ParseError(f"source has {l} leaves, target has {target.leaf_count}", bar + 1)
    while dec_pos < bar and text[dec_pos].isspace():
        dec_pos += 1
    dec = _parse_decoration(dec_text, ctx, l, dec_pos)
    try:
        return Diagram(ctx, source, dec, target)
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc), dec_pos) from None

