import json
import math

import pytest

import randig

ARD3 = {"family": "ard", "n": 3, "p_a": 0.4}


def test_ard_pmf_matches_closed_form():
    pmf = randig.exact_pmf(ARD3)
    assert len(pmf) == 64
    for mask, p in pmf.items():
        k = bin(mask).count("1")
        assert p == pytest.approx(0.4**k * 0.6 ** (6 - k), rel=1e-14)


def test_model_as_json_text():
    assert randig.exact_pmf(json.dumps(ARD3)) == randig.exact_pmf(ARD3)


def test_derd_equals_ard_at_matched_parameters():
    p_d, p_a, degenerate = randig.derd_ard_params(0.75)
    assert (p_d, p_a, degenerate) == (pytest.approx(2 / 3), pytest.approx(0.5), False)
    derd = {"family": "derd", "n": 3, "p_e": 0.75, "p_d": p_d}
    assert randig.total_variation(derd, {"family": "ard", "n": 3, "p_a": p_a}) <= 1e-12


def test_sampling_is_deterministic():
    model = {"family": "derd", "n": 6, "p_e": 0.5, "p_d": 0.5}
    assert randig.sample_masks(model, 100, 7) == randig.sample_masks(model, 100, 7)
    for arcs in (randig.sample(model, s) for s in range(50)):
        assert randig.arc_counts(6, arcs)["n_s"] == 0


def test_errors_map_to_python_exceptions():
    with pytest.raises(randig.DegenerateModel):
        randig.validate({"family": "derd", "n": 3, "p_e": 0.5, "p_d": 1.0})
    with pytest.raises(ValueError):
        randig.validate({"family": "ard", "n": 3, "p_a": 1.5})
    with pytest.raises(randig.Unsupported):
        randig.exact_pmf({"family": "ard", "n": 6, "p_a": 0.5})


def test_n2_and_spectral():
    c = randig.n2_classify(0.25, 0.25)
    assert c["p_a"] == pytest.approx(0.5)
    assert randig.n2_classify(0.2, 0.1)["p_a"] is None
    r = randig.spectral_cycle_moment([0.5, 0.5], [[0.2, 0.4], [0.4, 0.8]])
    # Rank one: h = u u^T with u = (sqrt(.2), sqrt(.8)), so sum lambda^4 = (0.5*.2 + 0.5*.8)^4.
    assert r["lambda4_sum"] == pytest.approx(0.5**4, rel=1e-12)
    assert r["abs_diff"] <= 1e-10


def test_knn_and_rnnd():
    arcs, ties = randig.knn_digraph([[0.0], [1.0], [3.0]], k=1)
    assert sorted(arcs) == [(1, 2), (2, 1), (3, 2)]
    assert not ties
    stats = randig.rnnd_stats({"family": "rnnd", "n": 5, "k": 2, "d": 2, "dist": "normal", "norm": "l2"}, 20000, 3)
    assert stats["out_degree_violations"] == 0
    m = stats["arc_marginal"]
    assert abs(m["value"] - 0.5) <= 4 * m["std_error"]


def test_invariance_and_events():
    assert randig.invariance_check(ARD3)["invariant"]
    e = randig.event_probability({"family": "derd", "n": 4, "p_e": 0.3, "p_d": 0.9}, [(1, 2)])
    assert e["value"] == pytest.approx(0.27, rel=1e-14)
    assert e["n_samples"] == 0


def test_cli_in_process():
    code, out, _ = randig.run_cli("oracle", "n2", "--p1", 0.25, "--p2", 0.25)
    assert code == 0
    assert json.loads(out)["pass"] is True
    assert randig.run_cli("oracle", "nope")[0] == 2
    lines = randig.pmf_csv(ARD3).splitlines()
    assert lines[0] == "digraph_hex,probability"
    assert math.isclose(sum(float(l.split(",")[1]) for l in lines[1:]), 1.0, rel_tol=1e-14)
