"""Dynamical reports: hitting/sensitivity/splitting, pair checks, scans.

The time reports are compared against a brute-force string reference on a
small hand-built model; the named models are then checked against pinned
outcomes that were derived from those same scans.
"""

import pytest

from shiftlab.dynamics import (
    HorizonTooLarge,
    MODEL_BUILDERS,
    SpaceModel,
    check_pair,
    classify,
    example_family_model,
    gap_stats,
    hitting_times,
    omega_membership_evidence,
    periodic_scan,
    recursive_word_model,
    sample_pool,
    sensitivity_times,
    spike_train_eqp_refutation,
    spike_train_model,
    splitting_times,
    trivial_pair_scan,
    zero_block_independence,
    zero_block_schedule,
)
from shiftlab.points import Cylinder, constant_point, ev_periodic_point
from shiftlab.words import make_word, word_from_text


def ev(pre: str, period: str):
    return ev_periodic_point(word_from_text(pre), word_from_text(period))


def tiny_model():
    return SpaceModel(
        name="tiny",
        alphabet_size=2,
        generators=(("a", ev("", "10")), ("b", ev("", "1100"))),
        limit_points=(),
        orbit_depth=40,
    )


def expand(point, length):
    return point.prefix(length).text()


# --- models resolve their named points ---


def test_model_builders_cover_the_three_models():
    assert set(MODEL_BUILDERS) == {"s7", "ex2", "ex3"}


def test_recursive_model_points():
    m = recursive_word_model()
    assert m.resolve("x").symbol_at(0) == 1
    assert m.resolve("y").prefix(4).text() == "1000"
    assert m.resolve("zero").symbol_at(7) == 0
    assert m.resolve("one_zero").prefix(4).text() == "1000"
    assert m.resolve("closing:1").prefix(22).text() == m.resolve("x").prefix(22).text()
    with pytest.raises(KeyError):
        m.resolve("nope")


def test_family_model_points():
    m = example_family_model()
    names = [n for n, _ in m.generators]
    assert names == ["member:0", "member:1"]
    assert m.alphabet_size == 3
    with pytest.raises(KeyError):
        m.resolve("closing:1")  # only the recursive model has closings


def test_spike_model_companions_truncate():
    m = spike_train_model()
    x = m.resolve("x")
    for n in (1, 2, 3):
        z = m.resolve(f"z:{n}")
        head = 2 + sum(i + 1 for i in range(2, n + 1))  # blocks 1..n
        assert z.prefix(head).text() == x.prefix(head).text()
        assert z.symbol_at(head) == 0 and x.symbol_at(head) == 1
    assert m.resolve("spike:2").prefix(5).text() == "00100"


# --- sampling ---


def test_sample_pool_takes_earliest_entries_and_limits():
    m = recursive_word_model(orbit_depth=100)
    pool = sample_pool(m, Cylinder(word_from_text("10")), cap=4)
    names = [n for n, _ in pool.entries]
    assert names[0] == "x"  # x itself starts with 10
    assert "one_zero" in names  # the only limit point inside [10]
    assert "zero" not in names and "one" not in names
    for name, pt in pool.entries:
        assert pt.prefix(2).text() == "10"


def test_sample_pool_cap_marks_truncation():
    m = example_family_model(orbit_depth=500)
    pool = sample_pool(m, Cylinder(make_word([(0, 1)], 3)), cap=3)
    assert pool.truncated
    assert pool.params()["truncated"] is True
    assert sum(1 for o in pool.origins if o is not None) == 6  # 3 per member


# --- time reports vs brute force ---


def brute_times(entries, horizon, *, v_text=None, entourage=None):
    need = horizon + (entourage or 0) + (len(v_text) if v_text else 0) + 2
    texts = [expand(pt, need) for _, pt in entries]
    hits = set()
    for t in range(1, horizon + 1):
        if v_text is not None and entourage is None:
            if any(s[t : t + len(v_text)] == v_text for s in texts):
                hits.add(t)
        elif entourage is not None and v_text is None:
            for i in range(len(texts)):
                for j in range(i + 1, len(texts)):
                    a = texts[i][t : t + entourage]
                    b = texts[j][t : t + entourage]
                    if a != b:
                        hits.add(t)
    return sorted(hits)


@pytest.mark.parametrize("v", ["11", "0", "1100", "010"])
def test_hitting_times_match_brute_force(v):
    m = tiny_model()
    u = Cylinder(word_from_text("1"))
    horizon = 60
    rep = hitting_times(m, u, Cylinder(word_from_text(v)), horizon, sample_cap=6)
    pool = sample_pool(m, u, cap=6)
    assert list(rep.times) == brute_times(pool.entries, horizon, v_text=v)
    assert rep.kind == "hitting" and rep.horizon == horizon


@pytest.mark.parametrize("depth", [1, 2, 3])
def test_sensitivity_times_match_brute_force(depth):
    m = tiny_model()
    u = Cylinder(word_from_text("1"))
    horizon = 60
    rep = sensitivity_times(m, u, depth, horizon, sample_cap=6)
    pool = sample_pool(m, u, cap=6)
    assert list(rep.times) == brute_times(pool.entries, horizon, entourage=depth)
    assert rep.sampled["entourage_depth"] == depth


def test_splitting_is_exactly_the_intersection():
    m = tiny_model()
    u = Cylinder(word_from_text("1"))
    v = Cylinder(word_from_text("00"))
    horizon, depth = 80, 2
    hit = hitting_times(m, u, v, horizon, sample_cap=6)
    sen = sensitivity_times(m, u, depth, horizon, sample_cap=6)
    spl = splitting_times(m, u, v, depth, horizon, sample_cap=6)
    assert set(spl.times) == set(hit.times) & set(sen.times)
    assert spl.kind == "splitting"


def test_gap_stats_edge_cases():
    assert gap_stats([], 10) == {
        "max_gap": 10,
        "longest_run": 0,
        "complement_count": 10,
    }
    assert gap_stats([4], 10) == {
        "max_gap": 6,
        "longest_run": 1,
        "complement_count": 9,
    }
    got = gap_stats([1, 2, 3, 7], 10)
    assert got == {"max_gap": 4, "longest_run": 3, "complement_count": 6}
    # full window and single-time shapes
    assert gap_stats(list(range(1, 101)), 100) == {
        "max_gap": 1,
        "longest_run": 100,
        "complement_count": 0,
    }
    assert gap_stats([1], 100)["max_gap"] == 99


def test_classify_reads_report_statistics():
    m = tiny_model()
    u = Cylinder(word_from_text("1"))
    rep = hitting_times(m, u, u, 40, sample_cap=6)
    assert classify(rep) == {
        "syndetic_evidence": rep.max_gap,
        "thick_evidence": rep.longest_run,
        "cofinite_evidence": rep.complement_count,
    }
    # recomputable from the times list, bit-identically
    stats = gap_stats(rep.times, rep.horizon)
    assert (rep.max_gap, rep.longest_run, rep.complement_count) == (
        stats["max_gap"],
        stats["longest_run"],
        stats["complement_count"],
    )


def test_horizon_guards():
    m = tiny_model()
    u = Cylinder(word_from_text("1"))
    with pytest.raises(ValueError):
        hitting_times(m, u, u, 0)
    with pytest.raises(HorizonTooLarge):
        hitting_times(m, u, u, 2**31 + 1)


# --- pair checks against pinned outcomes ---


def test_check_pair_rejects_unknown_kind():
    m = recursive_word_model()
    with pytest.raises(ValueError):
        check_pair(m, "both", m.resolve("x"), m.resolve("zero"), 1)


def test_recursive_model_evp_with_zero_tail_is_satisfied():
    m = recursive_word_model()
    v = check_pair(m, "evp", m.resolve("x"), m.resolve("zero"), 2, max_uv_depth=2)
    assert v.status == "satisfied"
    assert (v.u_depth, v.v_depth) == (22, 2)
    assert v.witnesses == ()


def test_recursive_model_evp_with_alternating_tail_is_violated():
    m = recursive_word_model()
    v = check_pair(m, "evp", m.resolve("x"), m.resolve("one_zero"), 2, max_uv_depth=2)
    assert v.status == "violated"
    assert (v.u_depth, v.v_depth) == (None, None)
    times = [w["time"] for w in v.witnesses]
    assert times == [2, 17, 2, 1429]
    assert len(v.depths_tried) == 4
    for w in v.witnesses:
        assert w["observed_prefix"] != w["expected_prefix"]


def test_eqp_trigger_is_at_least_as_easy_to_fire():
    # the eqp premise fires whenever any pool point lands in V, so a pair
    # violated for evp is violated for eqp as well
    m = recursive_word_model()
    v = check_pair(m, "eqp", m.resolve("x"), m.resolve("one_zero"), 2, max_uv_depth=2)
    assert v.status == "violated"


def test_family_model_eqp_zero_is_satisfied_at_the_block_pair():
    m = example_family_model()
    v = check_pair(m, "eqp", m.resolve("member:0"), m.resolve("zero"), 2)
    assert v.status == "satisfied"
    assert (v.u_depth, v.v_depth) == (4, 2)


def test_spike_model_evp_zero_is_satisfied():
    m = spike_train_model()
    v = check_pair(m, "evp", m.resolve("x"), m.resolve("zero"), 1)
    assert v.status == "satisfied"
    assert (v.u_depth, v.v_depth) == (5, 1)


def test_check_pair_inconclusive_when_nothing_samples():
    m = SpaceModel(
        name="tiny",
        alphabet_size=2,
        generators=(("a", constant_point(0)),),
        limit_points=(),
        orbit_depth=50,
    )
    v = check_pair(m, "eqp", constant_point(1), constant_point(0), 1, horizon=100)
    assert v.status == "inconclusive"
    assert v.witnesses == ()


# --- member independence and refutations ---


def test_zero_block_schedule_layout():
    assert zero_block_schedule(30) == [(1, 1), (4, 5), (9, 11), (16, 19), (25, 29)]


def test_family_members_agree_on_zero_blocks():
    m = example_family_model()
    assert zero_block_independence(m, 1, 10_000)
    assert zero_block_independence(m, 2, 10_000)


def test_zero_block_independence_detects_disagreement():
    m = SpaceModel(
        name="tiny",
        alphabet_size=2,
        generators=(("a", ev("", "100")), ("b", ev("", "010"))),
        limit_points=(),
        orbit_depth=50,
    )
    assert not zero_block_independence(m, 1, 50)


def test_spike_refutation_facts_replay():
    m = spike_train_model()
    got = spike_train_eqp_refutation(m, 2)
    assert got["time"] == 5
    assert got["u_depth"] == 5
    assert got["companion"] == "z:2"
    assert all(got["facts"].values())
    with pytest.raises(ValueError):
        spike_train_eqp_refutation(m, 0)


def test_trivial_pair_scan_distinguishes_dying_hits():
    m = spike_train_model()
    x = m.resolve("x")
    dead = trivial_pair_scan(m, x, x, 3, 200)
    assert dead["times"] == [] and dead["eventually_empty_evidence"]
    alive = trivial_pair_scan(m, x, m.resolve("spike:0"), 2, 200)
    assert alive["last_hit"] is not None and alive["last_hit"] > 100
    assert not alive["eventually_empty_evidence"]


# --- limit point evidence ---


def test_omega_evidence_for_recursive_model():
    m = recursive_word_model()
    got = omega_membership_evidence(m.resolve("y"), m.resolve("x"), 22, 10_000)
    assert got["last_occurrence"] == 3124
    assert got["evidence"]


def test_omega_evidence_negative_for_rigid_prefix():
    m = spike_train_model()
    x = m.resolve("x")
    got = omega_membership_evidence(x, x, 3, 10_000)
    assert got["last_occurrence"] is None
    assert not got["evidence"]


def test_omega_evidence_zero_is_a_family_limit():
    m = example_family_model()
    got = omega_membership_evidence(m.resolve("member:0"), m.resolve("zero"), 3, 10_000)
    assert got["evidence"]


# --- periodic scan ---


def test_periodic_scan_survivors_for_recursive_model():
    got = periodic_scan(recursive_word_model(), 4, 10_000)
    assert got["survivors"] == ["0", "1"]
    assert got["candidates_checked"] == 22  # primitive words up to length 4
    assert got["repetition_cap_rule"] == "max(8, horizon // period_length)"


def test_periodic_scan_on_spike_model_keeps_only_the_zero_tail():
    # the truncated companions end in all zeros, so 0^inf survives; ones are
    # always isolated, so nothing else does
    got = periodic_scan(spike_train_model(), 2, 100)
    assert got["survivors"] == ["0"]


def test_periodic_scan_validates_arguments():
    with pytest.raises(ValueError):
        periodic_scan(recursive_word_model(), 0, 100)
