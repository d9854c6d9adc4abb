from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

import simpdepth as sd

import oracles
from conftest import make_config


# --- lower bounds ----------------------------------------------------------

GENERAL_BOUNDS = {
    1: Fraction(1, 2),
    2: Fraction(1, 6),
    3: Fraction(1, 24),
    4: Fraction(1, 120),
    5: Fraction(1, 720),
    6: Fraction(1, 5040),
}

TWO_COINCIDE_BOUNDS = {
    1: Fraction(1, 2),
    2: Fraction(2, 9),
    3: Fraction(1, 16),
    4: Fraction(1, 75),
    5: Fraction(1, 432),
    6: Fraction(1, 2940),
}


@pytest.mark.parametrize("d, value", sorted(GENERAL_BOUNDS.items()))
def test_bound_general_frozen(d, value):
    spec = sd.bound(d, "general")
    assert spec.value == value
    assert (spec.d, spec.kind) == (d, "general")


@pytest.mark.parametrize("d, value", sorted(TWO_COINCIDE_BOUNDS.items()))
def test_bound_two_coincide_frozen(d, value):
    assert sd.bound(d, "two-coincide").value == value


def test_two_coincide_strictly_improves_for_d_at_least_2():
    assert sd.bound(1, "two-coincide").value == sd.bound(1, "general").value
    for d in range(2, 9):
        assert sd.bound(d, "two-coincide").value > sd.bound(d, "general").value


def test_bound_validation():
    with pytest.raises(sd.InputError):
        sd.bound(0)
    with pytest.raises(sd.InputError):
        sd.bound(2, "median")


# --- deep point search -----------------------------------------------------


def test_arrangement_strategy_certifies_global_max():
    for seed in (0, 1, 2):
        cfg = sd.generate({"dim": 2, "sizes": [4]}, seed=seed)
        res = sd.find_deep_point(cfg, "arrangement-2d")
        classes = [[tuple(p) for p in c.tolist()] for c in cfg.classes]
        assert res.certified
        assert res.max_count == oracles.deep_point_max_2d(classes)
        assert res.report.containing <= res.max_count
        assert res.strategy == "arrangement-2d"
        assert res.candidates_evaluated > 0
        assert res.max_fraction == Fraction(res.max_count, res.report.total)


def test_exhaustive_1d_certifies():
    cfg = make_config([(-1.0,), (0.5,)], [(0.25,), (2.0,)])
    res = sd.find_deep_point(cfg, "exhaustive-1d")
    assert res.certified
    # brute force over data coordinates (the max is attained at one)
    best = max(
        sd.colorful_count(cfg, (float(x),)) for cls in cfg.classes for (x,) in cls
    )
    assert res.max_count == best
    assert res.report.containing == best


def test_heuristics_never_beat_certified_max():
    cfg = sd.generate({"dim": 2, "sizes": [5]}, seed=7)
    cert = sd.find_deep_point(cfg, "arrangement-2d")
    for strategy in ("rainbow-centroids", "grid-refine"):
        res = sd.find_deep_point(cfg, strategy, candidates=128, seed=1)
        assert not res.certified
        assert res.max_count is None
        assert res.report.containing <= cert.max_count


def test_auto_strategy_dispatch():
    one_d = make_config([(0.0,), (1.0,)], [(0.5,), (2.0,)])
    assert sd.find_deep_point(one_d).strategy == "exhaustive-1d"
    two_d = sd.generate({"dim": 2, "sizes": [4]}, seed=0)
    assert sd.find_deep_point(two_d).strategy == "arrangement-2d"
    three_d = sd.generate({"dim": 3, "sizes": [3]}, seed=0)
    assert sd.find_deep_point(three_d).strategy == "rainbow-centroids"


def test_strategy_validation():
    cfg = sd.generate({"dim": 3, "sizes": [3]}, seed=0)
    with pytest.raises(sd.InputError):
        sd.find_deep_point(cfg, "simulated-annealing")
    with pytest.raises(sd.InputError):
        sd.find_deep_point(cfg, "arrangement-2d")
    two_d = sd.generate({"dim": 2, "sizes": [3]}, seed=0)
    with pytest.raises(sd.InputError):
        sd.find_deep_point(two_d, "exhaustive-1d")


def test_certified_max_affine_invariant():
    cfg = sd.generate({"dim": 2, "sizes": [4]}, seed=5)
    base = sd.find_deep_point(cfg, "arrangement-2d").max_count
    mapped = sd.ColoredConfiguration(
        [c @ np.array([[2.0, 0.0], [0.0, 0.5]]) + [1.25, -3.5] for c in cfg.classes]
    )
    assert sd.find_deep_point(mapped, "arrangement-2d").max_count == base


# --- verification ----------------------------------------------------------


def test_verify_config_general_2d():
    for seed in (0, 1, 2, 3):
        cfg = sd.generate({"dim": 2, "sizes": [12]}, seed=seed)
        rep = sd.verify_selection(cfg)
        assert rep.passed
        assert rep.certified
        assert rep.bound.value == Fraction(1, 6)
        assert rep.achieved >= Fraction(1, 6) - rep.tolerance
        assert rep.max_fraction >= rep.achieved
        # achieved is exactly the witness's depth fraction
        assert sd.colorful_count(cfg, rep.witness.coords) == rep.achieved * 12**3
        assert rep.config_hash is not None


def test_verify_config_two_coincide():
    cfg = sd.generate(
        {"dim": 2, "sizes": [12], "coincide_last_two": True}, seed=4
    )
    rep = sd.verify_selection(cfg, kind="two-coincide")
    assert rep.passed
    assert rep.bound.value == Fraction(2, 9)
    general = sd.generate({"dim": 2, "sizes": [12]}, seed=4)
    with pytest.raises(sd.InputError):
        sd.verify_selection(general, kind="two-coincide")


def test_verify_config_1d_median():
    cfg = sd.generate({"dim": 1, "sizes": [15]}, seed=2)
    rep = sd.verify_selection(cfg, tolerance=0)
    assert rep.passed and rep.certified
    assert rep.achieved >= Fraction(1, 2)


def test_verify_config_3d_heuristic():
    cfg = sd.generate({"dim": 3, "sizes": [10]}, seed=1)
    rep = sd.verify_selection(cfg, candidates=400, seed=0)
    assert rep.passed
    assert not rep.certified
    assert rep.max_fraction is None


def test_verify_sampler_family_mc():
    fam = [sd.standard_sampler("gaussian", 2) for _ in range(3)]
    rep = sd.verify_selection(fam, mc_samples=30_000, seed=3)
    assert rep.passed
    assert rep.mc is not None
    assert rep.achieved == Fraction(rep.mc.hits, rep.mc.samples)
    assert not rep.certified
    mixed = fam[:2] + [sd.standard_sampler("uniform-box", 2)]
    with pytest.raises(sd.InputError):
        sd.verify_selection(mixed, kind="two-coincide", mc_samples=1000)


def test_verify_tolerance_validation():
    cfg = sd.generate({"dim": 2, "sizes": [6]}, seed=0)
    with pytest.raises(sd.InputError):
        sd.verify_selection(cfg, tolerance=-1)
    rep = sd.verify_selection(cfg, tolerance="1/6")
    assert rep.tolerance == Fraction(1, 6)
    assert rep.passed  # achieved >= 0 >= bound - 1/6


# --- segment crossing ------------------------------------------------------


def test_crossing_floor_values():
    assert sd.crossing_floor(Fraction(1, 2)) == Fraction(1, 2)
    assert sd.crossing_floor(Fraction(1, 3)) == Fraction(4, 9)
    assert sd.crossing_floor(0) == 0
    assert sd.crossing_floor(1) == 0
    with pytest.raises(sd.InputError):
        sd.crossing_floor(Fraction(3, 2))


def test_segment_crossing_hand_instance():
    shared = [(0.3, 1.0), (0.4, 2.0), (0.6, -1.0), (0.7, -2.0)]
    cfg = make_config([(5.0, 5.0)] * 1, list(shared), list(shared))
    rep = sd.segment_crossing_fraction(cfg, [(0.0, 0.0), (1.0, 0.0)])
    assert rep.side_fraction == Fraction(1, 2)
    assert rep.crossing_fraction == Fraction(1, 2)
    assert rep.floor == Fraction(1, 2)
    assert rep.pairs == 16


def test_segment_crossing_boundary_counts_side_a():
    shared = [(0.5, 0.0), (0.25, 1.0), (0.75, -1.0)]
    cfg = make_config([(5.0, 5.0)], list(shared), list(shared))
    rep = sd.segment_crossing_fraction(cfg, [(0.0, 0.0), (1.0, 0.0)])
    assert rep.side_fraction == Fraction(2, 3)
    assert rep.crossing_fraction == Fraction(7, 9)
    assert rep.floor == Fraction(4, 9)
    assert rep.crossing_fraction >= rep.floor


def test_segment_crossing_floor_holds_on_random_instances():
    for seed in range(5):
        cfg = sd.generate(
            {"dim": 2, "sizes": [9], "coincide_last_two": True}, seed=seed
        )
        rep = sd.segment_crossing_fraction(cfg, [(0.2, 0.1), (0.8, 0.9)])
        assert rep.crossing_fraction >= rep.floor


def test_segment_crossing_sampler_mode():
    fam = [sd.standard_sampler("gaussian", 2) for _ in range(3)]
    rep = sd.segment_crossing_fraction(fam, [(0.0, 0.0), (0.0, 1.0)], samples=20_000, seed=1)
    again = sd.segment_crossing_fraction(fam, [(0.0, 0.0), (0.0, 1.0)], samples=20_000, seed=1)
    assert rep.mc is not None and rep.mc.hits == again.mc.hits
    # independent same-measure picks make the floor tight: estimate sits near it
    assert abs(float(rep.crossing_fraction) - float(rep.floor)) < 0.02
    assert abs(float(rep.crossing_fraction) - 0.5) < 0.02


def test_segment_crossing_validation():
    cfg = sd.generate({"dim": 2, "sizes": [5]}, seed=0)
    with pytest.raises(sd.InputError):
        sd.segment_crossing_fraction(cfg, [(0.0, 0.0), (1.0, 0.0)])
    coincide = sd.generate(
        {"dim": 2, "sizes": [5], "coincide_last_two": True}, seed=0
    )
    with pytest.raises(sd.InputError):
        sd.segment_crossing_fraction(coincide, [(0.0, 0.0), (0.0, 0.0)])
    with pytest.raises(sd.InputError):
        sd.segment_crossing_fraction(coincide, [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0)])
