"""Seeded property suites, shared by ``htgroups selftest`` and the test-suite.

Every suite takes a :class:`SplitMix64` stream and a case budget and returns
a :class:`SuiteResult`.  Given the same seed the cases are identical.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from . import braid, forest as fo, ribbon
from . import diagram as dg
from .diagram import GroupContext, Variant
from .rng import SplitMix64

DEFAULT_SEED = 20240229
CONTEXT_GRID = [(d, r) for d in (2, 3) for r in (1, 2, 3)]


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    elapsed: float = 0.0
    first_failure: str = ""
    counts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.cases > 0

    def check(self, ok: bool, label: str, detail: Callable[[], str] | str = "") -> None:
        self.cases += 1
        self.counts[label] = self.counts.get(label, 0) + 1
        if not ok:
            self.failures += 1
            if not self.first_failure:
                self.first_failure = f"{label}: {detail() if callable(detail) else detail}"

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: {self.cases} cases, {self.failures} failures, {self.elapsed:.2f}s"
        if self.first_failure:
            text += f" [{self.first_failure}]"
        return text


# --- random inputs -------------------------------------------------------------


def _context(rng: SplitMix64, variant: Variant, case: int) -> GroupContext:
    d, r = CONTEXT_GRID[case % len(CONTEXT_GRID)]
    return GroupContext(d, r, variant)


def _element(rng: SplitMix64, ctx: GroupContext, max_carets: int = 3, max_length: int = 4) -> dg.Diagram:
    return dg.random_element(ctx, rng.below(max_carets + 1), rng.below(max_length + 1), 2, rng)


def _random_expansions(rng: SplitMix64, x: dg.Diagram, count: int) -> dg.Diagram:
    for _ in range(count):
        x = dg.expand(x, 1 + rng.below(x.leaf_count))
    return x


def _rewrite_decoration(rng: SplitMix64, x: dg.Diagram) -> dg.Diagram:
    """Same element, decoration word respelled by random braid relations."""
    dec = x.decoration
    if isinstance(dec, braid.BraidWord):
        dec = braid.random_rewrite(dec, rng, 12)
    elif isinstance(dec, ribbon.RibbonBraid):
        dec = ribbon.RibbonBraid(dec.twists, braid.random_rewrite(dec.braid, rng, 12))
    else:
        return x
    return dg.Diagram(x.ctx, x.source, dec, x.target)


def disguise(rng: SplitMix64, x: dg.Diagram) -> dg.Diagram:
    """An unreduced representative of the same element."""
    return _rewrite_decoration(rng, _random_expansions(rng, x, rng.below(4)))


def _partner(rng: SplitMix64, x: dg.Diagram) -> dg.Diagram:
    """Half the time an equal element in disguise, otherwise an unrelated one."""
    if rng.below(2):
        return disguise(rng, x)
    return _element(rng, x.ctx)


def pure_braid(rng: SplitMix64, strands: int, length: int) -> braid.BraidWord:
    w = braid.random_word(rng, strands, length)
    return w.compose(braid.BraidWord.from_permutation(w.permutation).inverse())


# --- suites --------------------------------------------------------------


def suite_forest(rng: SplitMix64, n: int = 200) -> SuiteResult:
    res = SuiteResult("forest")
    for case in range(n):
        d, r = CONTEXT_GRID[case % len(CONTEXT_GRID)]
        f = fo.forest_from_splits(d, r, [])
        for _ in range(rng.below(7)):
            f = fo.split_leaf(f, 1 + rng.below(f.leaf_count))
        l = f.leaf_count
        i = 1 + rng.below(l)
        g = fo.split_leaf(f, i)
        res.check(g.leaf_count == l + d - 1, "split leaf count", str(f))
        res.check(fo.remove_elementary_caret(g, i) == f, "split/remove", str(f))
        j = 1 + rng.below(l)
        if i != j:
            a, b = min(i, j), max(i, j)
            lhs = fo.split_leaf(fo.split_leaf(f, a), b + d - 1)
            rhs = fo.split_leaf(fo.split_leaf(f, b), a)
            res.check(lhs == rhs, "splits commute", f"{f} {a} {b}")
        res.check(fo.parse_forest(str(f), d, r) == f, "text round trip", str(f))
        res.check(
            all(fo.address_to_leaf(f, fo.leaf_address(f, k)) == k for k in range(1, l + 1)),
            "addresses", str(f),
        )
        other = fo.forest_from_splits(d, r, [])
        third = fo.forest_from_splits(d, r, [])
        for _ in range(rng.below(7)):
            other = fo.split_leaf(other, 1 + rng.below(other.leaf_count))
        for _ in range(rng.below(7)):
            third = fo.split_leaf(third, 1 + rng.below(third.leaf_count))
        h, ef, eg = fo.join(f, other)
        res.check(h == fo.join(other, f)[0], "join commutes", f"{f} {other}")
        res.check(fo.join(f, f) == (f, [], []), "join idempotent", str(f))
        res.check(
            fo.join(fo.join(f, other)[0], third)[0] == fo.join(f, fo.join(other, third)[0])[0],
            "join associative", f"{f} {other} {third}",
        )
        res.check(
            fo.forest_from_splits(d, r, []) is not None
            and _apply_splits(f, ef) == h and _apply_splits(other, eg) == h,
            "join expansions", f"{f} {other}",
        )
    return res


def _apply_splits(f, seq):
    for i in seq:
        f = fo.split_leaf(f, i)
    return f


def suite_braid_oracle(rng: SplitMix64, n: int = 500) -> SuiteResult:
    """Garside equality against handle-reduction triviality of u v^-1."""
    res = SuiteResult("braid_cross_oracle")
    for _ in range(n):
        strands = 2 + rng.below(7)
        u = braid.random_word(rng, strands, rng.below(41))
        kind = rng.below(3)
        if kind == 0:
            v = braid.random_rewrite(u, rng, 40)
        elif kind == 1 and len(u):
            # one letter changed: equal only by accident
            k = rng.below(len(u))
            letters = list(u.letters)
            letters[k] = -letters[k]
            v = braid.BraidWord(strands, tuple(letters))
        else:
            v = braid.random_word(rng, strands, rng.below(41))
        if len(v) > 40:
            v = braid.BraidWord(strands, v.letters[:40]) if kind != 0 else u
        g = braid.equal(u, v)
        h = braid.handle_reduce_is_trivial(u.compose(v.inverse()))
        res.check(g == h, "equal vs handle" + (" (equal)" if g else " (distinct)"), f"{u} {v}")
    return res


def suite_braid(rng: SplitMix64, n: int = 200) -> SuiteResult:
    res = SuiteResult("braid")
    for _ in range(n):
        strands = 1 + rng.below(7)
        u = braid.random_word(rng, strands, rng.below(20))
        v = braid.random_word(rng, strands, rng.below(20))
        res.check(
            (u * v).permutation == u.permutation.compose(v.permutation), "permutation is a monoid map",
            f"{u} {v}",
        )
        form = u.garside
        res.check(form.word().garside == form, "normal form idempotent", str(u))
        res.check(braid.is_left_weighted(form), "left weighted", str(u))
        res.check(
            all(f != tuple(range(strands, 0, -1)) and f != tuple(range(1, strands + 1)) for f in form.factors),
            "no trivial or Delta factors", str(u),
        )
        res.check(braid.equal(u * u.inverse(), braid.BraidWord(strands)), "inverse", str(u))
        if strands >= 2:
            d = 2 + rng.below(strands - 1)
            i = 1 + rng.below(strands - d + 1)
            perm = braid.block_half_twist(strands, i, d, 1).permutation
            want = list(range(1, strands + 1))
            want[i - 1:i + d - 1] = reversed(want[i - 1:i + d - 1])
            res.check(list(perm.images) == want, "half twist reverses block", f"{strands} {i} {d}")
        w = pure_braid(rng, strands, rng.below(12))
        mat = braid.linking_matrix(w)
        res.check(
            (braid.linking_matrix(braid.random_rewrite(w, rng, 20)) == mat).all(),
            "linking numbers of pure braids", str(w),
        )
    return res


def _cable_ok(u, v, i, d, rng) -> bool:
    uu = braid.random_rewrite(u, rng, 10)
    vv = braid.random_rewrite(v, rng, 10)
    lhs = braid.cable(u.compose(v), i, d)
    rhs = braid.cable(uu, i, d).compose(braid.cable(vv, u.permutation(i), d))
    return braid.equal(lhs, rhs)


def suite_cabling(rng: SplitMix64, n: int = 200) -> SuiteResult:
    res = SuiteResult("cabling")
    for _ in range(n):
        strands = 1 + rng.below(5)
        d = 2 + rng.below(2)
        i = 1 + rng.below(strands)
        u = braid.random_word(rng, strands, rng.below(12))
        v = braid.random_word(rng, strands, rng.below(12))
        res.check(_cable_ok(u, v, i, d, rng), "cable homomorphism", f"{u} {v} {i} {d}")
        c = braid.cable(u, i, d)
        back = c
        for _ in range(d - 1):
            back = braid.delete_strand(back, i + 1)
        res.check(back == u, "uncable by deletion", f"{u} {i} {d}")
        k = rng.below(d)
        smaller = braid.delete_strand(c, i + k)
        want = braid.cable(u, i, d - 1) if d > 2 else u
        res.check(braid.equal(smaller, want), "delete one cable strand", f"{u} {i} {d} {k}")
        x = ribbon.RibbonBraid(tuple(rng.between(-3, 3) for _ in range(strands)), u)
        y = ribbon.RibbonBraid(tuple(rng.between(-3, 3) for _ in range(strands)), v)
        lhs = ribbon.split_band(x * y, i, d)
        rhs = ribbon.split_band(x, i, d) * ribbon.split_band(y, x.target_of(i), d)
        res.check(ribbon.rb_equal(lhs, rhs), "split_band multiplicative", f"{x} {y} {i} {d}")
        s = ribbon.split_band(x, i, d)
        q = min(s.target_of(i + k) for k in range(d))
        merged = ribbon.try_merge_band(s, i, d, q)
        res.check(merged is not None and ribbon.rb_equal(merged, x), "split then merge", f"{x} {i} {d}")
    return res


def suite_ribbon(rng: SplitMix64, n: int = 200) -> SuiteResult:
    res = SuiteResult("ribbon_group")

    def rand(strands):
        return ribbon.RibbonBraid(
            tuple(rng.between(-3, 3) for _ in range(strands)),
            braid.random_word(rng, strands, rng.below(21)),
        )

    for _ in range(n):
        strands = 1 + rng.below(6)
        x, y, z = rand(strands), rand(strands), rand(strands)
        e = ribbon.RibbonBraid.identity(strands)
        res.check(ribbon.rb_equal((x * y) * z, x * (y * z)), "associative", f"{x} {y} {z}")
        res.check(ribbon.rb_equal(x * x.inverse(), e) and ribbon.rb_equal(x.inverse() * x, e), "inverse", str(x))
        res.check(ribbon.rb_equal(e * x, x) and ribbon.rb_equal(x * e, x), "identity", str(x))
        t = ribbon.RibbonBraid(x.twists, braid.BraidWord(strands))
        b = ribbon.RibbonBraid.from_braid(x.braid)
        perm = x.braid.permutation
        slid = tuple(x.twists[perm.source_of(p) - 1] for p in range(1, strands + 1))
        res.check(
            ribbon.rb_equal(t * b, b * ribbon.RibbonBraid(slid, braid.BraidWord(strands))),
            "twists slide through braids", str(x),
        )
        s = (x * y).to_signed()
        res.check(s == x.to_signed() * y.to_signed(), "signed projection is a homomorphism", f"{x} {y}")
        res.check(
            (x * y).total_twist() == x.total_twist() + y.total_twist()
            and (x * y).writhe() == x.writhe() + y.writhe(),
            "twist and writhe additive", f"{x} {y}",
        )
        ox = ribbon.RibbonBraid(tuple(2 * t for t in x.twists), x.braid)
        oy = ribbon.RibbonBraid(tuple(2 * t for t in y.twists), y.braid)
        res.check((ox * oy).is_oriented() and ox.inverse().is_oriented(), "oriented subgroup", f"{ox} {oy}")
    return res


def suite_group_axioms(rng: SplitMix64, n: int = 200) -> SuiteResult:
    res = SuiteResult("group_axioms")
    for variant in Variant:
        for case in range(n):
            ctx = _context(rng, variant, case)
            x, y, z = _element(rng, ctx), _element(rng, ctx), _element(rng, ctx)
            e = dg.identity(ctx)
            tag = variant.prefix
            res.check(dg.equals((x * y) * z, x * (y * z)), f"{tag} associative", lambda: f"{x} {y} {z}")
            res.check(dg.equals(x * dg.invert(x), e) and dg.equals(dg.invert(x) * x, e), f"{tag} inverse",
                      lambda: str(x))
            res.check(dg.equals(e * x, x) and dg.equals(x * e, x), f"{tag} identity", lambda: str(x))
    return res


def suite_confluence(rng: SplitMix64, n: int = 200) -> SuiteResult:
    res = SuiteResult("confluence")
    for variant in Variant:
        for case in range(n):
            ctx = _context(rng, variant, case)
            x = _element(rng, ctx)
            a = _rewrite_decoration(rng, _random_expansions(rng, x, rng.below(6)))
            b = _rewrite_decoration(rng, _random_expansions(rng, x, rng.below(6)))
            ra, rb = dg.reduce(a), dg.reduce(b)
            tag = variant.prefix
            res.check(str(ra) == str(rb), f"{tag} reduce ignores history", lambda: f"{ra} {rb}")
            res.check(dg.is_reduced(ra), f"{tag} reduced output", lambda: str(ra))
            res.check(dg.invariants(a) == dg.invariants(x), f"{tag} invariants are class functions",
                      lambda: f"{x} {a}")
    return res


def suite_equality(rng: SplitMix64, n: int = 500) -> SuiteResult:
    res = SuiteResult("equality_cross_check")
    for variant in Variant:
        for case in range(n):
            ctx = _context(rng, variant, case)
            x = _element(rng, ctx, 2, 3)
            y = _partner(rng, x)
            res.check(dg.equals(x, y) == dg.equals_by_quotient(x, y), f"{variant.prefix} equals vs x/y",
                      lambda: f"{x} {y}")
    return res


def _kernel_element(rng: SplitMix64, ctx: GroupContext) -> dg.Diagram:
    f = fo.forest_from_splits(ctx.d, ctx.r, [])
    for _ in range(rng.below(4)):
        f = fo.split_leaf(f, 1 + rng.below(f.leaf_count))
    l = f.leaf_count
    w = pure_braid(rng, l, rng.below(10))
    if ctx.variant is Variant.BRAID:
        dec = w
    else:
        dec = ribbon.RibbonBraid(tuple(2 * rng.between(-2, 2) for _ in range(l)), w)
    return dg.Diagram(ctx, f, dec, f)


def suite_quotients(rng: SplitMix64, n: int = 200, n_lift: int = 100) -> SuiteResult:
    res = SuiteResult("quotients")
    for (src, dst) in dg.QUOTIENTS:
        tag = f"{src.prefix}->{dst.prefix}"
        for case in range(n):
            ctx = _context(rng, src, case)
            x, y = _element(rng, ctx), _element(rng, ctx)
            lhs = dg.project(x * y, dst)
            rhs = dg.project(x, dst) * dg.project(y, dst)
            res.check(dg.equals(lhs, rhs), f"{tag} homomorphism", lambda: f"{x} {y}")
        for case in range(n // 4):
            ctx = _context(rng, src, case)
            k = _kernel_element(rng, ctx)
            image = dg.project(k, dst)
            res.check(dg.is_identity(image), f"{tag} kernel element dies", lambda: str(k))
            red = dg.reduce(k)
            res.check(red.source == red.target, f"{tag} kernel has equal forests", lambda: str(red))
    for case in range(n_lift):
        ctx = _context(rng, Variant.PERM, case)
        v = _element(rng, ctx)
        for target in (Variant.BRAID, Variant.RIBBON_ORIENTED):
            up = dg.lift(v, target)
            res.check(dg.equals(dg.project(up, Variant.PERM), v), f"lift to {target.prefix}", lambda: str(v))
        up = dg.lift(v, Variant.RIBBON)
        res.check(
            dg.equals(dg.project(up, Variant.SIGNED_PERM), dg.lift(v, Variant.SIGNED_PERM)),
            "lift to RV", lambda: str(v),
        )
        res.check(
            dg.lift(v, Variant.BRAID).decoration.writhe() == dg.reduce(v).decoration.inversions(),
            "lift is crossing-minimal", lambda: str(v),
        )
    return res


def suite_stability(rng: SplitMix64, n: int = 200) -> SuiteResult:
    res = SuiteResult("stability_maps")
    for variant in Variant:
        tag = variant.prefix
        for case in range(n):
            ctx = _context(rng, variant, case)
            x, y = _element(rng, ctx), _element(rng, ctx)
            res.check(
                dg.equals(dg.stabilize(x * y), dg.stabilize(x) * dg.stabilize(y)),
                f"{tag} stabilize homomorphism", lambda: f"{x} {y}",
            )
            res.check(
                dg.equals(dg.shift_iso(x * y), dg.shift_iso(x) * dg.shift_iso(y)),
                f"{tag} shift homomorphism", lambda: f"{x} {y}",
            )
            res.check(dg.equals(dg.shift_iso_inverse(dg.shift_iso(x)), x), f"{tag} shift inverse", lambda: str(x))
            w = _partner(rng, x)
            res.check(
                dg.equals(dg.stabilize(x), dg.stabilize(w)) == dg.equals(x, w),
                f"{tag} stabilize injective", lambda: f"{x} {w}",
            )
            if variant is Variant.RIBBON_ORIENTED:
                res.check(
                    dg.stabilize(x).decoration.is_oriented() and dg.shift_iso(x).decoration.is_oriented(),
                    "RV+ preserved", lambda: str(x),
                )
    return res


def _random_point(rng: SplitMix64, ctx: GroupContext, depth: int):
    return 1 + rng.below(ctx.r), tuple(1 + rng.below(ctx.d) for _ in range(depth))


def suite_cantor(rng: SplitMix64, n: int = 100, depth: int = 12, points: int = 16) -> SuiteResult:
    res = SuiteResult("cantor_oracle")
    for variant in (Variant.PERM, Variant.SIGNED_PERM):
        for case in range(n):
            ctx = _context(rng, variant, case)
            x, y = _element(rng, ctx), _element(rng, ctx)
            xy = x * y
            ok = True
            for _ in range(points):
                p = _random_point(rng, ctx, depth)
                if dg.cantor_action(xy, p) != dg.cantor_action(y, dg.cantor_action(x, p)):
                    ok = False
            res.check(ok, f"{variant.prefix} action of product", lambda: f"{x} {y}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "forest": suite_forest,
    "braid": suite_braid,
    "braid_cross_oracle": suite_braid_oracle,
    "cabling": suite_cabling,
    "ribbon_group": suite_ribbon,
    "group_axioms": suite_group_axioms,
    "confluence": suite_confluence,
    "equality_cross_check": suite_equality,
    "quotients": suite_quotients,
    "stability_maps": suite_stability,
    "cantor_oracle": suite_cantor,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, **sizes) -> SuiteResult:
    """Run one suite on its own stream, derived from ``seed`` and the suite name."""
    salt = sum((k + 1) * ord(c) for k, c in enumerate(name))
    rng = SplitMix64(seed ^ (salt * 0x9E3779B1))
    start = time.perf_counter()
    res = SUITES[name](rng, **sizes)
    res.elapsed = time.perf_counter() - start
    return res


def scaled_sizes(name: str, scale: float) -> dict:
    """Case budgets of suite ``name`` multiplied by ``scale`` (empty at scale 1)."""
    if scale == 1.0:
        return {}
    fn = SUITES[name]
    defaults = fn.__defaults__ or ()
    params = fn.__code__.co_varnames[1:fn.__code__.co_argcount]
    return {
        p: max(1, int(val * scale))
        for p, val in zip(params[-len(defaults):], defaults)
        if p in ("n", "n_lift")
    }


def run_all(seed: int = DEFAULT_SEED, names=None, scale: float = 1.0, echo=None) -> list[SuiteResult]:
    out = []
    for name in names or SUITES:
        res = run_suite(name, seed, **scaled_sizes(name, scale))
        if echo:
            echo(res.line())
        out.append(res)
    return out
