import numpy as np
import pytest

from ra_beamkit.array_model import (ArrayGeometry, RadiationPattern,
                                    composite_response, steering_vector)
from ra_beamkit.convex_core import EpigraphProblem, solve_epigraph

# Frozen random instance (N=3, K=2, L=1) with its 10^6-point Monte Carlo
# reference, computed once with seed 555 (uniform draws in the unit ball,
# filtered to the interference cap).
FROZEN_C1 = np.array([-0.4921178761278439 + 1.007658074547165j,
                      -1.2409838874613655 - 1.5157672701297613j,
                      -1.1069725909459165 - 0.021455670779537105j])
FROZEN_C2 = np.array([0.7593361639355336 - 1.6030285969365592j,
                      -0.6448401734059829 + 1.0538807246408959j,
                      1.2711098901666709 - 0.6090316553374876j])
FROZEN_V1 = np.array([-0.7902879667712 + 0.9059630112282674j,
                      0.7657192944733938 - 0.18061316751390907j,
                      -1.0344574401126125 - 0.0679987708692784j])
FROZEN_MC_BEST = 1.2800919508077362


def sample_best_feasible(problem, count, seed):
    """Monte Carlo lower bound: best objective over random feasible points."""
    rng = np.random.default_rng(seed)
    n = problem.dim
    best = -np.inf
    remaining = count
    while remaining > 0:
        m = min(remaining, 200_000)
        W = rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))
        W /= np.linalg.norm(W, axis=1, keepdims=True)
        W *= problem.ball_radius * rng.random((m, 1)) ** (1.0 / (2 * n))
        ok = np.ones(m, dtype=bool)
        for v in problem.quad_vectors:
            ok &= np.abs(W @ v.conj()) ** 2 <= problem.quad_cap
        if ok.any():
            Wf = W[ok]
            obj = np.min([2 * np.real(Wf @ c.conj()) - b
                          for c, b in zip(problem.linear_terms, problem.offsets)],
                         axis=0)
            best = max(best, float(obj.max()))
        remaining -= m
    return best


def test_single_term_recovers_mrc_gain():
    # surrogate built at the matched-filter weights must reproduce their gain
    pat = RadiationPattern()
    geo = ArrayGeometry(8)
    rot = np.zeros(8)
    v = composite_response(pat, geo, rot, 90.0)
    w_mrc = steering_vector(geo, 90.0) / np.sqrt(8)
    c = v * np.vdot(v, w_mrc)
    b = abs(np.vdot(v, w_mrc)) ** 2
    sol = solve_epigraph(EpigraphProblem([c], [b], [], quad_cap=0.1),
                         warm_start=w_mrc)
    gain = abs(np.vdot(sol.weights, v)) ** 2
    assert sol.status == "optimal"
    assert gain == pytest.approx(b, abs=1e-6)


def test_orthogonal_interference_is_inactive():
    c = np.array([1.0 + 0j, 0.0])
    v = np.array([0.0, 1.0 + 0j])
    sol = solve_epigraph(EpigraphProblem([c], [0.0], [v], quad_cap=1e-4))
    # all weight goes along c: t* = 2*||c|| with the cap never engaged
    assert sol.objective == pytest.approx(2.0, abs=1e-6)
    assert abs(sol.weights[1]) < 1e-4


def test_cap_along_objective_direction():
    c = np.array([1.0 + 0j, 0.0])
    sol = solve_epigraph(EpigraphProblem([c], [0.5], [c.copy()], quad_cap=0.25))
    # |w_0| limited to 0.5 by the cap: t* = 2*0.5 - 0.5
    assert sol.objective == pytest.approx(0.5, abs=1e-6)


def test_frozen_instance_beats_monte_carlo_reference():
    problem = EpigraphProblem([FROZEN_C1, FROZEN_C2], [0.8, 0.2], [FROZEN_V1],
                              quad_cap=0.4)
    sol = solve_epigraph(problem)
    assert sol.status == "optimal"
    assert sol.feasibility_residual <= 1e-8
    assert sol.objective >= FROZEN_MC_BEST - 1e-4


def test_objective_monotone_in_quad_cap():
    rng = np.random.default_rng(1)
    cs = [rng.normal(size=4) + 1j * rng.normal(size=4) for _ in range(2)]
    vs = [rng.normal(size=4) + 1j * rng.normal(size=4)]
    lo = solve_epigraph(EpigraphProblem(cs, [0.4, 0.1], vs, quad_cap=0.05))
    hi = solve_epigraph(EpigraphProblem(cs, [0.4, 0.1], vs, quad_cap=0.5))
    assert hi.objective >= lo.objective - 1e-6


def test_scale_consistency_interior_optimum():
    # opposing linear terms keep the optimum interior, so scaling c -> g*c and
    # b -> g^2*b scales the optimum by g^2
    c = np.array([0.7 + 0.2j, -0.4 + 0.1j])
    cs = [c, -c]
    bs = [0.3, 0.1]
    gamma = 0.5
    base = solve_epigraph(EpigraphProblem(cs, bs, [], quad_cap=1.0))
    scaled = solve_epigraph(EpigraphProblem(
        [gamma * ci for ci in cs], [gamma ** 2 * bi for bi in bs], [],
        quad_cap=1.0))
    assert np.linalg.norm(base.weights) < 0.99          # ball inactive
    assert scaled.objective == pytest.approx(gamma ** 2 * base.objective,
                                             abs=1e-6)


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_random_small_instances_match_sampling_oracle(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    K = int(rng.integers(1, 4))
    L = int(rng.integers(0, 3))
    cs = [rng.normal(size=n) + 1j * rng.normal(size=n) for _ in range(K)]
    bs = [float(rng.uniform(0, 1)) for _ in range(K)]
    vs = [rng.normal(size=n) + 1j * rng.normal(size=n) for _ in range(L)]
    problem = EpigraphProblem(cs, bs, vs, quad_cap=float(rng.uniform(0.2, 1.0)))
    sol = solve_epigraph(problem)
    assert sol.status == "optimal"
    assert sol.feasibility_residual <= 1e-8
    mc = sample_best_feasible(problem, 200_000, seed + 1000)
    assert sol.objective >= mc - 1e-3


def test_warm_start_does_not_change_answer():
    rng = np.random.default_rng(9)
    cs = [rng.normal(size=5) + 1j * rng.normal(size=5) for _ in range(3)]
    vs = [rng.normal(size=5) + 1j * rng.normal(size=5)]
    problem = EpigraphProblem(cs, [0.2, 0.5, 0.1], vs, quad_cap=0.3)
    cold = solve_epigraph(problem)
    warm = solve_epigraph(problem, warm_start=rng.normal(size=5) * 10)
    assert warm.objective == pytest.approx(cold.objective, abs=2e-6)


def test_input_validation():
    with pytest.raises(ValueError):
        EpigraphProblem([], [], [], quad_cap=0.1)
    with pytest.raises(ValueError):
        EpigraphProblem([np.ones(2)], [0.0], [], quad_cap=0.0)
    with pytest.raises(ValueError):
        EpigraphProblem([np.ones(2)], [0.0], [np.ones(3)], quad_cap=0.1)
    with pytest.raises(ValueError):
        solve_epigraph(EpigraphProblem([np.ones(2)], [0.0], [], quad_cap=1.0),
                       tolerance=0.0)
