import math

import pytest

import elitist_ea as eea


def test_closed_forms():
    assert eea.p_sph_1d(1.0, 1.0).value == pytest.approx(0.477249868051820793, abs=1e-15)
    ep = eea.p_sph_ep_bounds(1.0, 1.0, 2)
    assert ep.kind == "interval"
    assert ep.lower == pytest.approx(0.177536156609519553, abs=1e-15)
    assert ep.upper == pytest.approx(0.325813470042788793, abs=1e-15)
    assert eea.ir_sph_1d(1.0, 0.88).value == pytest.approx(0.3239, abs=5e-5)
    assert eea.optimal_sigma_cht_1d(10, 4) == pytest.approx(3.94598468126108415, abs=1e-13)
    exact, sandwich = eea.p_sph_rus([0.5, 0.5, 0.5, 0.5], 1.0, 0.5)
    assert sandwich.contains(exact.value)
    assert not eea.rus_cht_coordinate_feasible(10, 2, 4.75)


def test_numerics_take_python_callables():
    assert eea.gaussian_cdf(0.0) == 0.5
    assert eea.integrate(lambda x: x * x, 0.0, 3.0) == pytest.approx(9.0, abs=1e-12)
    arg, value = eea.maximize_1d(lambda s: eea.ir_sph_1d(1.0, s).value, 0.01, 5.0)
    assert arg == pytest.approx(0.88, abs=0.01)
    assert value == pytest.approx(0.3239, abs=5e-4)
    base, r2 = eea.fit_decay_base({n: eea.p_sph_ep_bounds(1.0, 1.0, n).upper for n in range(2, 9)})
    assert base == pytest.approx(math.erf(1 / math.sqrt(2)), abs=1e-12)
    assert r2 > 0.9999


def test_problems_and_errors():
    assert eea.evaluate("cheating", [math.sqrt(15.0), 0.0], m=10) == pytest.approx(6.0)
    assert eea.classify_point("cheating", [3.0, 1.0], m=10) == "absorbing"
    with pytest.raises(eea.InfeasiblePointError):
        eea.evaluate("cheating", [5.0, 0.0], m=10)
    with pytest.raises(ValueError):
        eea.p_sph_1d(-1.0, 1.0)
    with pytest.raises(eea.DecayFitError):
        eea.fit_decay_base({1: 0.5, 2: 0.5, 3: 0.5, 4: 0.5})


def test_monte_carlo_is_seeded():
    kw = dict(seed=11, samples=100_000, partitions=4)
    a = eea.estimate_success_probability("sphere", 1, "ep", 1.0, 1.0, **kw)
    b = eea.estimate_success_probability("sphere", 1, "ep", 1.0, 1.0, **kw)
    assert a.successes == b.successes
    assert abs(a.mean - 0.477249868051820793) < 4 * a.std_error
    with pytest.raises(TypeError):
        eea.estimate_success_probability("sphere", 1, "ep", 1.0, 1.0, samples=10)
    zero = eea.estimate_success_probability(
        "cheating", 4, "rus", 2.0, 3.0, seed=1, samples=50_000,
        placement="equal", target="explore", m=10)
    assert zero.successes == 0


def test_run_and_sweep():
    out = eea.run("sphere", 2, "ep", 0.5, 500, seed=3, init_norm2=2.0)
    trace = out["fitness"]
    assert len(trace) == 500
    assert all(b <= a for a, b in zip(trace, trace[1:]))
    assert out["final_fitness"] == pytest.approx(trace[-1], abs=1e-12)

    table = eea.run_sweep("fig2")
    ir = table.column("ir_exact")
    ratio = table.column("ratio")
    peak = max(range(len(ir)), key=ir.__getitem__)
    assert ratio[peak] == pytest.approx(0.88, abs=0.01)
    assert eea.format_csv(table).startswith("# format=eea-sweep/1\n")
    with pytest.raises(ValueError):
        eea.run_sweep("fig1")
