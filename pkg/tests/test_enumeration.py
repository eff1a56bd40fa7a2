import json
from fractions import Fraction

import pytest

from qcv import enumeration as en

SMALL = dict(d_min=20, d_max=80)


def test_default_survivors(full_report):
    assert full_report.survivors == [44, 66]
    (w,) = full_report.witnesses(44)
    assert (w["x"], w["y"], w["g"], w["chiY"], w["chiS"]) == (330, 54, "158", "79", "227")


def test_witnesses_revalidate(full_report):
    for d in full_report.survivors:
        for w in full_report.witnesses(d):
            assert en.revalidate(d, w) == []


def test_revalidate_catches_tampering(full_report):
    w = dict(full_report.witnesses(44)[0], g="159")
    assert en.revalidate(44, w) == ["genus differs"]


def test_deterministic_bytes(full_report):
    assert en.run(en.FilterConfig()).dumps() == full_report.dumps()


def test_partition_equals_single_worker(full_report):
    assert en.run(en.FilterConfig(), jobs=3).dumps() == full_report.dumps()


def test_merge_is_order_independent():
    config = en.FilterConfig(**SMALL)
    parts = [en.run(en.FilterConfig(d_min=a, d_max=b)) for a, b in ((20, 40), (42, 60), (62, 80))]
    merged = en.SurvivorReport.merge(config, parts)
    assert merged.dumps() == en.SurvivorReport.merge(config, parts[::-1]).dumps()
    assert merged.dumps() == en.run(config).dumps()


def test_partition_round_robin():
    assert en.partition([20, 22, 24, 26, 28], 2) == [[20, 24, 28], [22, 26]]
    assert en.partition([20], 8) == [[20]]


@pytest.mark.parametrize("name", en.FILTERS)
def test_filters_are_monotone(name):
    # without integrality every lattice point is evaluated, so keep that window small
    top = 34 if name == "integrality" else 70
    on = en.run(en.FilterConfig(d_min=20, d_max=top))
    off = en.run(en.FilterConfig(d_min=20, d_max=top).without(name))
    assert set(on.survivors) <= set(off.survivors)


def test_json_schema(full_report):
    doc = json.loads(full_report.dumps())
    assert set(doc) == {"config", "survivors", "rejection_histogram"}
    assert [s["d"] for s in doc["survivors"]] == [44, 66]
    assert set(doc["survivors"][0]["witnesses"][0]) == {"x", "y", "v", "chiY", "chiS", "g"}
    assert "." not in json.dumps(doc["rejection_histogram"])


def test_histogram_accounts_for_every_point():
    r = en.run(en.FilterConfig(**SMALL))
    for d, h in r.rejection_histogram().items():
        rejected = sum(v for k, v in h.items() if k != "lattice_points")
        survivors = len(r.witnesses(int(d)))
        assert rejected + survivors == h["lattice_points"]


def test_budget_overflow(monkeypatch):
    with pytest.raises(en.RegionOverflow):
        en.run(en.FilterConfig(d_min=100, d_max=100, budget=10))
    monkeypatch.setenv("QCV_BUDGET", "5")
    assert en.env_budget() == 5
    with pytest.raises(en.RegionOverflow):
        en.run(en.FilterConfig(d_min=60, d_max=60))


def test_gross_bound_plugin(tmp_path):
    plugin = tmp_path / "bound.py"
    plugin.write_text("def allowed(d, g):\n    return d != 66\n")
    r = en.run(en.FilterConfig(d_min=40, d_max=70, gross_bound=f"{plugin}:allowed"))
    assert r.survivors == [44]
    assert en.run(en.FilterConfig(d_min=40, d_max=70), gross=lambda d, g: False).survivors == []


def test_bad_plugin_spec():
    with pytest.raises(ValueError):
        en.load_plugin("no_colon_here")


def test_config_validation():
    with pytest.raises(ValueError):
        en.FilterConfig(d_min=10)
    with pytest.raises(ValueError):
        en.FilterConfig(filters=frozenset({"nonsense"}))


def test_cover_formulas():
    assert en.chi_OY(330, 618) == 79
    assert en.chi_OS_from_cover(Fraction(79), 30, -108) == 227
    assert en.known_small_conic_bundles() == frozenset({6, 12, 14, 18})
