from fractions import Fraction

import pytest

from fkc import catalog
from fkc.complexes import dual, tensor
from fkc.gf2 import EnumerationLimitError
from fkc.invariants import (
    INFINITY,
    PLFunction,
    compare,
    contains_hom_generator,
    d_surgery_delta,
    g0,
    g_next,
    g_tower,
    hom_generators,
    level0_realizers,
    nu_plus,
    nu_plus_dual_from_g0,
    nu_plus_from_g0,
    tau,
    tau_from_g0,
    upsilon,
    upsilon2,
    upsilon_at,
    upsilon_from_g0,
    v_k,
    v_k_from_g0,
)
from fkc.region import ClosedRegion, Point, closure, quadrant

import oracles

SAMPLED_T = (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(3, 2))


def region_key(r: ClosedRegion):
    return tuple((p.i, p.j) for p in r.corners)


# -- homological generators ---------------------------------------------------


def test_hom_generators_unknot():
    gens = hom_generators(catalog.unknot())
    assert len(gens) == 1
    assert gens[0].region == quadrant(0, 0)


def test_hom_generators_trefoil():
    t23 = catalog.torus_staircase(1, False)
    gens = hom_generators(t23)
    regions = sorted(hg.region for hg in gens)
    assert [region_key(r) for r in regions] == [((0, 1),), ((1, 0),)]
    # each generator is a single dual staircase corner
    assert sorted(hg.vector.weight() for hg in gens) == [1, 1]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hom_generators_cn(n):
    # For n >= 3 extra generators appear (e.g. x0 + U x2 + U x'2), but their
    # regions strictly contain the two minimal quadrants, whose realizers
    # stay the singletons {x0} and {x'0}.
    c = catalog.cn(n)
    gens = hom_generators(c)
    assert len(gens) == len(oracles.hom_generator_bits(c))
    minimal = level0_realizers(c)
    assert sorted(region_key(r) for r in minimal) == [((0, 1),), ((1, 0),)]
    for chains in minimal.values():
        assert len(chains) == 1 and chains[0].weight() == 1


def test_hom_generators_match_oracle():
    for c in (
        catalog.torus_staircase(1, False),
        catalog.torus_staircase(2, True),
        catalog.cn(2),
        catalog.figure_eight_model(),
        tensor(catalog.torus_staircase(1, False), catalog.torus_staircase(1, True)),
    ):
        ours = sorted(hg.vector.bits for hg in hom_generators(c))
        assert ours == sorted(oracles.hom_generator_bits(c))


def test_hom_generator_regions_match_oracle():
    c = tensor(catalog.torus_staircase(1, False), catalog.torus_staircase(1, False))
    ours = sorted(region_key(hg.region) for hg in hom_generators(c))
    theirs = sorted(
        tuple(oracles.maximal_points(oracles.support_of(c, 0, v)))
        for v in oracles.hom_generator_bits(c)
    )
    assert ours == theirs


# -- nu+ ----------------------------------------------------------------------


def test_nu_plus_unknot():
    assert nu_plus(catalog.unknot()) == 0


def test_nu_plus_trefoil():
    assert nu_plus(catalog.torus_staircase(1, False)) == 1


def test_nu_plus_duality_catalog():
    for name, c in catalog.builders().items():
        if name == "square":
            continue
        assert nu_plus(tensor(c, dual(c))) == 0, name


def test_nu_plus_matches_oracle():
    for c in (
        catalog.torus_staircase(1, False),
        catalog.torus_staircase(2, False),
        catalog.cn(2),
        catalog.cn(3),
        catalog.figure_eight_model(),
        tensor(catalog.cn(2), catalog.torus_staircase(1, True)),
    ):
        assert nu_plus(c) == oracles.oracle_nu_plus(c)


# -- V_k ----------------------------------------------------------------------


def test_v_k_unknot():
    for k in range(4):
        assert v_k(catalog.unknot(), k) == 0


def test_v_k_trefoil():
    t23 = catalog.torus_staircase(1, False)
    assert v_k(t23, 0) == 1
    assert v_k(t23, 1) == 0


def test_v_k_ladder_catalog():
    for name, c in catalog.builders().items():
        if name == "square":
            continue
        vs = [v_k(c, k) for k in range(5)]
        for k in range(4):
            assert vs[k] - 1 <= vs[k + 1] <= vs[k], name


def test_v_k_matches_oracle():
    for c in (
        catalog.torus_staircase(2, False),
        catalog.cn(3),
        tensor(catalog.torus_staircase(1, False), catalog.torus_staircase(1, False)),
    ):
        for k in range(3):
            assert v_k(c, k) == oracles.oracle_v_k(c, k)


def test_v_k_rejects_negative():
    with pytest.raises(ValueError):
        v_k(catalog.unknot(), -1)


# -- tau ----------------------------------------------------------------------


def test_tau_unknot():
    assert tau(catalog.unknot()) == 0


@pytest.mark.parametrize("g", [1, 2, 3])
def test_tau_staircases(g):
    m = catalog.torus_staircase(g, mirror=True)
    assert tau(m) == -g
    assert tau(dual(m)) == g


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tau_cn(n):
    assert tau(catalog.cn(n)) == 1


def test_tau_matches_oracle():
    for c in (
        catalog.torus_staircase(1, True),
        catalog.torus_staircase(2, False),
        catalog.cn(2),
        catalog.figure_eight_model(),
        tensor(catalog.cn(2), catalog.torus_staircase(1, True)),
    ):
        assert tau(c) == oracles.oracle_tau(c)


# -- Upsilon ------------------------------------------------------------------


def test_upsilon_unknot_zero():
    fn = upsilon(catalog.unknot())
    assert fn.breakpoints == ((Fraction(0), Fraction(0)), (Fraction(2), Fraction(0)))


def test_upsilon_trefoil_breakpoints():
    fn = upsilon(catalog.torus_staircase(1, False))
    assert fn.breakpoints == (
        (Fraction(0), Fraction(0)),
        (Fraction(1), Fraction(-1)),
        (Fraction(2), Fraction(0)),
    )


def test_upsilon_slope_is_minus_tau():
    for name, c in catalog.builders().items():
        if name == "square":
            continue
        assert upsilon(c).slope_at_zero() == -tau(c), name


def test_upsilon_at_matches_full_function():
    for c in (catalog.torus_staircase(2, True), catalog.cn(3)):
        fn = upsilon(c)
        for t in SAMPLED_T:
            assert upsilon_at(c, t) == fn.value(t)


def test_upsilon_at_matches_oracle():
    for c in (
        catalog.torus_staircase(2, False),
        catalog.cn(2),
        tensor(catalog.torus_staircase(1, False), catalog.cn(2)),
    ):
        for t in SAMPLED_T:
            assert upsilon_at(c, t) == oracles.oracle_upsilon_at(c, t)


def test_upsilon_endpoints_vanish():
    for name, c in catalog.builders().items():
        if name == "square":
            continue
        fn = upsilon(c)
        assert fn.value(0) == 0 and fn.value(2) == 0


# -- Upsilon^2 ---------------------------------------------------------------


def test_upsilon2_trefoil():
    t23 = catalog.torus_staircase(1, False)
    assert upsilon2(t23, 1, 1) == -1


def test_upsilon2_matches_oracle():
    t23 = catalog.torus_staircase(1, False)
    for (t, s) in ((Fraction(1), Fraction(1)), (Fraction(1), Fraction(1, 2))):
        assert upsilon2(t23, t, s) == oracles.oracle_upsilon2(t23, t, s)
    # the connecting chains of c2 sit on the line value 3/2, one step
    # further out than the trefoil's, so upsilon^2 drops to -2
    c2 = catalog.cn(2)
    assert oracles.oracle_upsilon2(c2, 1, 1) == -2
    assert upsilon2(c2, 1, 1) == -2


def test_upsilon2_unique_generator_is_infinite():
    m = catalog.torus_staircase(1, mirror=True)
    for t in SAMPLED_T:
        if 0 < t < 2:
            assert upsilon2(m, t, 1) == INFINITY


def test_upsilon2_unknot_infinite():
    assert upsilon2(catalog.unknot(), 1, 1) == INFINITY


def test_upsilon2_domain_checks():
    t23 = catalog.torus_staircase(1, False)
    with pytest.raises(ValueError):
        upsilon2(t23, 0, 1)
    with pytest.raises(ValueError):
        upsilon2(t23, 1, 3)


# -- G0 -----------------------------------------------------------------------


def test_g0_unknot():
    assert g0(catalog.unknot()) == (quadrant(0, 0),)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_g0_cn(n):
    assert g0(catalog.cn(n)) == (quadrant(0, 1), quadrant(1, 0))


def test_g0_fig8():
    assert g0(catalog.figure_eight_model()) == (quadrant(0, 0),)


def test_g0_matches_oracle():
    for c in (
        catalog.torus_staircase(2, False),
        catalog.figure_eight_model(),
        tensor(catalog.torus_staircase(1, False), catalog.torus_staircase(1, True)),
        tensor(catalog.cn(2), catalog.cn(2)),
    ):
        ours = [region_key(r) for r in g0(c)]
        assert ours == [tuple(r) for r in oracles.oracle_g0(c)]


def test_g0_minimality():
    # every homological generator's region contains a member of G0
    from fkc.region import subset

    for c in (catalog.torus_staircase(2, False), catalog.cn(3)):
        mins = g0(c)
        for hg in hom_generators(c):
            assert any(subset(m, hg.region) for m in mins)


def test_contains_hom_generator_formula():
    c = catalog.torus_staircase(1, False)
    assert contains_hom_generator(c, quadrant(0, 1))
    assert not contains_hom_generator(c, quadrant(0, 0))
    assert contains_hom_generator(c, closure([Point(0, 1), Point(1, 0)]))


# -- the G tower --------------------------------------------------------------


def test_g_next_trefoil():
    c1 = catalog.cn(1)
    reals = level0_realizers(c1)
    regions, next_reals = g_next(c1, reals, (quadrant(0, 1), quadrant(1, 0)), 1)
    assert regions == (quadrant(1, 1),)
    assert len(next_reals[quadrant(1, 1)]) == 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_g_next_cn_intermediate_levels(n):
    c = catalog.cn(n)
    reals = level0_realizers(c)
    regions = (quadrant(0, 1), quadrant(1, 0))
    for k in range(1, n):
        regions, reals = g_next(c, reals, (regions[0], regions[1]), k)
        assert regions == (quadrant(k, k + 1), quadrant(k + 1, k))
    regions, _ = g_next(c, reals, (regions[0], regions[1]), n)
    assert regions == (quadrant(n, n),)


def test_g_tower_unknot_stops_immediately():
    tower = g_tower(catalog.unknot(), depth=5)
    assert tower.region_sets() == [(quadrant(0, 0),)]
    assert tower.stop_reason == "singleton"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_g_tower_cn(n):
    tower = g_tower(catalog.cn(n), depth=n + 3)
    expected = [(quadrant(0, 1), quadrant(1, 0))]
    expected += [(quadrant(k, k + 1), quadrant(k + 1, k)) for k in range(1, n)]
    expected += [(quadrant(n, n),)]
    assert tower.region_sets() == expected
    assert tower.stop_reason == "singleton"


def test_g_tower_depth_zero():
    tower = g_tower(catalog.cn(2), depth=0)
    assert len(tower.levels) == 1
    assert tower.stop_reason == "depth"


def test_g_tower_stops_on_branching():
    # three minimal regions leave no canonical pair
    tower = g_tower(catalog.torus_staircase(2, False), depth=3)
    assert len(tower.levels) == 1
    assert tower.stop_reason == "branching"


def test_g_towers_distinguish_c2_c3():
    t2 = g_tower(catalog.cn(2), depth=4).region_sets()
    t3 = g_tower(catalog.cn(3), depth=4).region_sets()
    assert t2[:2] == t3[:2]
    assert t2[2] != t3[2]


def test_g_next_rejects_equal_pair():
    c = catalog.cn(2)
    reals = level0_realizers(c)
    with pytest.raises(ValueError):
        g_next(c, reals, (quadrant(0, 1), quadrant(0, 1)), 1)


def test_g_next_keeps_all_realizers():
    # at level 2 of the n=3 family each region is realized by four chains
    # (the particular solution plus the grading-2 kernel directions)
    c3 = catalog.cn(3)
    regions, reals = g_next(
        c3, level0_realizers(c3), (quadrant(0, 1), quadrant(1, 0)), 1
    )
    assert [len(reals[r]) for r in regions] == [1, 1]
    regions2, reals2 = g_next(c3, reals, (regions[0], regions[1]), 2)
    assert regions2 == (quadrant(2, 3), quadrant(3, 2))
    assert [len(reals2[r]) for r in regions2] == [4, 4]
    regions3, reals3 = g_next(c3, reals2, (regions2[0], regions2[1]), 3)
    assert regions3 == (quadrant(3, 3),)
    assert len(reals3[quadrant(3, 3)]) == 4


def test_g_next_arbitrary_branch_choices():
    # with three minimal regions every distinct pair is a legal branch
    t25 = catalog.torus_staircase(2, False)
    assert g0(t25) == (quadrant(0, 2), quadrant(1, 1), quadrant(2, 0))
    reals = level0_realizers(t25)
    out = {}
    for pair in (
        (quadrant(0, 2), quadrant(1, 1)),
        (quadrant(1, 1), quadrant(2, 0)),
        (quadrant(0, 2), quadrant(2, 0)),
    ):
        regions, _ = g_next(t25, reals, pair, 1)
        out[pair] = regions
    assert out[(quadrant(0, 2), quadrant(1, 1))] == (quadrant(1, 2),)
    assert out[(quadrant(1, 1), quadrant(2, 0))] == (quadrant(2, 1),)
    assert out[(quadrant(0, 2), quadrant(2, 0))] == (
        closure([Point(1, 2), Point(2, 1)]),
    )


# -- formulas from G0 ---------------------------------------------------------


def test_formulas_from_g0_trefoil():
    regions = g0(catalog.torus_staircase(1, False))
    assert nu_plus_from_g0(regions) == 1
    assert nu_plus_dual_from_g0(regions) == 0
    assert v_k_from_g0(regions, 0) == 1
    assert v_k_from_g0(regions, 1) == 0
    assert tau_from_g0(regions) == 1
    assert upsilon_from_g0(regions) == upsilon(catalog.torus_staircase(1, False))


# -- tensor-level laws ----------------------------------------------------------


def test_tensor_associative_on_invariants():
    a = catalog.torus_staircase(1, False)
    b = catalog.torus_staircase(1, True)
    c = catalog.cn(2)
    left = tensor(tensor(a, b), c)
    right = tensor(a, tensor(b, c))
    assert nu_plus(left) == nu_plus(right)
    assert tau(left) == tau(right)
    assert g0(left) == g0(right)


def test_v_k_tensor_inequality():
    pool = (
        catalog.torus_staircase(1, False),
        catalog.torus_staircase(2, False),
        catalog.cn(2),
        catalog.figure_eight_model(),
    )
    for a in pool:
        for b in pool:
            t = tensor(a, b)
            for k1 in range(3):
                for k2 in range(3):
                    assert v_k(t, k1 + k2) <= v_k(a, k1) + v_k(b, k2)


def test_g1_bounds_upsilon2():
    # the connecting-chain regions give an upper bound for little-upsilon2
    # at (t, s) = (1, 1); equality is not asserted
    from fkc.invariants import _line_value

    t = s = Fraction(1)
    for name in ("t2_3", "c2", "c3", "c4"):
        c = catalog.builders()[name]
        value = upsilon2(c, t, s)
        assert value != INFINITY
        little_u2 = -upsilon_at(c, t) / 2 - value / 2
        regions = g0(c)
        assert len(regions) == 2
        ups_t = -upsilon_at(c, t) / 2
        stats = []
        for r in regions:
            vals = [(_line_value(p, t), Fraction(p.j - p.i, 2)) for p in r.corners]
            f = max(v for v, _ in vals)
            act = [sl for v, sl in vals if v == f]
            stats.append((r, f, max(act), min(act)))
        vmin = min(st[1] for st in stats)
        att = [st for st in stats if st[1] == vmin]
        r_plus = {st[0] for st in att if st[2] == min(x[2] for x in att)}
        r_minus = {st[0] for st in att if st[3] == max(x[3] for x in att)}
        reals = level0_realizers(c)
        bound = None
        for rm in r_minus:
            for rp in r_plus:
                if rm == rp:
                    continue
                g1_regions, _ = g_next(c, reals, (rm, rp), 1)
                for reg in g1_regions:
                    outside = [p for p in reg.corners if _line_value(p, t) > ups_t]
                    if not outside:
                        continue
                    r_val = max(_line_value(p, s) for p in outside)
                    bound = r_val if bound is None else min(bound, r_val)
        assert bound is not None
        assert little_u2 <= bound, name


# -- compare ------------------------------------------------------------------


def test_compare_reflexive():
    for name, c in catalog.builders().items():
        if name == "square":
            continue
        assert compare(c, c) == "equal", name


@pytest.mark.parametrize("n", [2, 3, 4])
def test_compare_trefoil_below_cn(n):
    t23 = catalog.torus_staircase(1, False)
    assert compare(t23, catalog.cn(n)) == "less"
    assert compare(catalog.cn(n), t23) == "greater"


def test_compare_fig8_unknot():
    assert compare(catalog.figure_eight_model(), catalog.unknot()) == "equal"


def test_compare_incomparable():
    # T(2,5) vs 2x mirror trefoil: tau 2 vs -2 in one order is enough for
    # neither inequality via the connected sum with its own mirror classes
    a = catalog.torus_staircase(1, False)
    b = catalog.torus_staircase(1, True)
    s = tensor(a, tensor(a, b))  # class of the trefoil
    assert compare(s, catalog.unknot()) == "greater"
    assert compare(tensor(a, b), catalog.unknot()) == "equal"


# -- surgery correction terms -------------------------------------------------


def test_d_surgery_unknot():
    u = catalog.unknot()
    for (p, q, i) in ((1, 1, 0), (3, 2, 1), (5, 3, 4)):
        assert d_surgery_delta(u, p, q, i) == 0


def test_d_surgery_trefoil():
    t23 = catalog.torus_staircase(1, False)
    assert d_surgery_delta(t23, 1, 1, 0) == -2
    assert d_surgery_delta(t23, 3, 1, 1) == 0


def test_d_surgery_validation():
    t23 = catalog.torus_staircase(1, False)
    with pytest.raises(ValueError, match="coprime"):
        d_surgery_delta(t23, 4, 2, 1)
    with pytest.raises(ValueError, match="index"):
        d_surgery_delta(t23, 3, 1, 3)


# -- enumeration limits --------------------------------------------------------


def test_g0_respects_cap():
    t23 = catalog.torus_staircase(1, False)
    with pytest.raises(EnumerationLimitError) as exc:
        g0(t23, cap=1)
    assert exc.value.required == 2


def test_hom_generators_respect_cap():
    c = tensor(catalog.cn(2), catalog.cn(2))
    with pytest.raises(EnumerationLimitError):
        hom_generators(c, cap=8)


# -- PLFunction ----------------------------------------------------------------


def test_pl_from_samples_merges_collinear():
    fn = PLFunction.from_samples([(0, 0), (1, 1), (Fraction(1, 2), Fraction(1, 2)), (2, 2)])
    assert fn.breakpoints == ((Fraction(0), Fraction(0)), (Fraction(2), Fraction(2)))


def test_pl_value_interpolates():
    fn = PLFunction.from_samples([(0, 0), (1, -1), (2, 0)])
    assert fn.value(Fraction(1, 2)) == Fraction(-1, 2)
    assert fn.value(Fraction(3, 2)) == Fraction(-1, 2)


def test_pl_addition_and_negation():
    a = PLFunction.from_samples([(0, 0), (1, -1), (2, 0)])
    b = PLFunction.from_samples([(0, 0), (2, 2)])
    s = a + b
    assert s.value(1) == 0
    assert (-a).value(1) == 1
    assert a + (-a) == PLFunction.from_samples([(0, 0), (2, 0)])


def test_pl_rejects_conflicting_samples():
    with pytest.raises(ValueError):
        PLFunction.from_samples([(0, 0), (0, 1), (2, 0)])


def test_pl_requires_full_domain():
    with pytest.raises(ValueError):
        PLFunction(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))))
