"""Experiment orchestration: seeded runs, sweeps, and file emission.

A run seed fixes everything random in one solve: the initial weight phases,
the swarm streams, and (for the rotating scheme) the starting rotations.
Seed 0 starts from zero rotations; higher seeds assign each element's start
to the clamped closed-form boresight of a randomly chosen desired direction,
which gives the alternating optimizer a portfolio of basins to refine.  The
weight-only baselines ignore the rotation start.

Monte Carlo repetitions and sweep cells can run in a process pool; results
are aggregated in task order, so outputs are identical however many workers
are used.  ``RA_BEAMKIT_THREADS`` caps the worker count.
"""

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, replace

import numpy as np

from .ao import (RunReport, random_initial_weights, solve_foa, solve_ia,
                 solve_ra)
from .array_model import (BeamformerState, element_gain_linear,
                          full_array_gain, rotation_bounds)
from .scenario import ScenarioSpec, ScenarioError

DB_FLOOR = -300.0
SWEEP_FIELDS = ("num_antennas", "spacing_wavelengths", "eta_max_db")


def _child_seed(*entropy) -> int:
    return int(np.random.SeedSequence(tuple(int(e) for e in entropy))
               .generate_state(1, np.uint64)[0])


def initial_rotations(seed: int, desired_angles_deg, pattern, num_antennas,
                      stream_seed=None) -> np.ndarray:
    """Starting rotations for one seeded run (see module docstring)."""
    if seed == 0:
        return np.zeros(num_antennas)
    bounds = rotation_bounds(pattern)
    candidates = np.array([float(bounds.clip(a - 90.0))
                           for a in desired_angles_deg])
    rng = np.random.default_rng(seed if stream_seed is None else stream_seed)
    return candidates[rng.integers(0, candidates.shape[0], num_antennas)]


def run_single(spec: ScenarioSpec, scheme: str, seed: int,
               entropy=()) -> RunReport:
    """One seeded solve of one scheme.  ``entropy`` namespaces the streams."""
    n = spec.num_antennas
    w_seed = _child_seed(*entropy, seed, 1)
    pso_seed = _child_seed(*entropy, seed, 2)
    init_seed = _child_seed(*entropy, seed, 3)
    weights0 = random_initial_weights(n, w_seed)
    config = replace(spec.solver, pso=replace(spec.solver.pso, rng_seed=pso_seed))
    scenario = spec.scenario
    if scheme == "RA":
        rotations0 = initial_rotations(seed, scenario.desired_angles_deg,
                                       spec.pattern, n, stream_seed=init_seed)
        return solve_ra(scenario, spec.pattern, spec.geometry,
                        BeamformerState(weights0, rotations0), config, seed=seed)
    if scheme == "FOA":
        return solve_foa(scenario, spec.pattern, spec.geometry, weights0,
                         config, seed=seed)
    if scheme == "IA":
        return solve_ia(scenario, spec.geometry, weights0, config, seed=seed)
    raise ValueError(f"unknown scheme '{scheme}'")


def _run_single_task(task):
    spec, scheme, seed, entropy = task
    return run_single(spec, scheme, seed, entropy)


def worker_count() -> int:
    env = os.environ.get("RA_BEAMKIT_THREADS")
    if env is not None:
        return max(1, int(env))
    return min(os.cpu_count() or 1, 4)


def _pool_map(fn, tasks):
    workers = worker_count()
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=1))


def best_report(reports) -> RunReport:
    best = reports[0]
    for rep in reports[1:]:
        if rep.min_desired_gain > best.min_desired_gain:
            best = rep
    return best


# ---------------------------------------------------------------------------
# gain pattern sampling

def sample_gain_pattern(state: BeamformerState, pattern, geometry,
                        step_deg: float):
    """Gains over psi in [0, 180] at the given step; returns (psi, gain)."""
    count = int(round(180.0 / step_deg)) + 1
    psi = np.linspace(0.0, 180.0, count)
    rotations = state.rotations_deg
    if pattern is None:
        amp = np.ones((count, geometry.num_antennas))
    else:
        amp = np.sqrt(element_gain_linear(
            pattern, psi[:, None] - rotations[None, :]))
    n = np.arange(geometry.num_antennas)
    phase = np.exp(1j * 2.0 * np.pi * geometry.spacing_wavelengths
                   * n[None, :] * np.cos(np.radians(psi))[:, None])
    gains = np.abs((amp * phase) @ np.conj(state.weights)) ** 2
    return psi, gains


def gain_to_db(gain_linear) -> np.ndarray:
    g = np.asarray(gain_linear, dtype=float)
    with np.errstate(divide="ignore"):
        db = 10.0 * np.log10(np.where(g > 0, g, np.nan))
    return np.where(np.isnan(db) | (db < DB_FLOOR), DB_FLOOR, db)


def write_pattern_csv(path, state: BeamformerState, pattern, geometry,
                      step_deg: float):
    psi, gains = sample_gain_pattern(state, pattern, geometry, step_deg)
    dbs = gain_to_db(gains)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("psi_deg,gain_linear,gain_db\n")
        for p, g, d in zip(psi, gains, dbs):
            fh.write(f"{p:.17g},{g:.17g},{d:.17g}\n")


# ---------------------------------------------------------------------------
# report (de)serialization

def report_to_dict(report: RunReport, spec: ScenarioSpec) -> dict:
    return {
        "scheme": report.scheme,
        "seed": report.seed,
        "min_desired_gain": report.min_desired_gain,
        "max_interference_gain": report.max_interference_gain,
        "objective_history": list(report.objective_history),
        "outer_iterations": report.outer_iterations,
        "final_state": {
            "weights_real": report.final_state.weights.real.tolist(),
            "weights_imag": report.final_state.weights.imag.tolist(),
            "rotations_deg": report.final_state.rotations_deg.tolist(),
        },
        "config": asdict(spec.solver),
        "scenario": {
            "desired_angles_deg": list(spec.desired_angles_deg),
            "interference_angles_deg": list(spec.interference_angles_deg),
            "eta_max_db": spec.eta_max_db,
        },
        "geometry": {
            "num_antennas": spec.num_antennas,
            "spacing_wavelengths": spec.spacing_wavelengths,
        },
        "pattern": asdict(spec.pattern),
    }


def write_report_json(path, report: RunReport, spec: ScenarioSpec):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report_to_dict(report, spec), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_report_state(path):
    """Read back (scheme, BeamformerState) from a run-report JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    fs = doc["final_state"]
    weights = np.asarray(fs["weights_real"]) + 1j * np.asarray(fs["weights_imag"])
    state = BeamformerState(weights, np.asarray(fs["rotations_deg"]))
    return doc["scheme"], state


# ---------------------------------------------------------------------------
# top-level experiment entry points

def run_scenario(spec: ScenarioSpec, output_dir) -> dict:
    """Solve every scheme at every seed; write reports, patterns, summary.

    Returns the best report per scheme.  Files written into ``output_dir``:
    ``report_<scheme>.json`` and ``pattern_<scheme>.csv`` per scheme plus
    ``summary.csv``.
    """
    os.makedirs(output_dir, exist_ok=True)
    tasks = [(spec, scheme, seed, ()) for scheme in spec.schemes
             for seed in spec.seeds]
    reports = _pool_map(_run_single_task, tasks)

    best = {}
    for scheme in spec.schemes:
        group = [r for r in reports if r.scheme == scheme]
        best[scheme] = best_report(group)

    full = full_array_gain(spec.pattern, spec.geometry)
    summary_rows = []
    for scheme in spec.schemes:
        rep = best[scheme]
        write_report_json(os.path.join(output_dir, f"report_{scheme.lower()}.json"),
                          rep, spec)
        write_pattern_csv(os.path.join(output_dir, f"pattern_{scheme.lower()}.csv"),
                          rep.final_state,
                          None if scheme == "IA" else spec.pattern,
                          spec.geometry, spec.pattern_sample_step_deg)
        gain = rep.min_desired_gain
        summary_rows.append((scheme, gain, float(gain_to_db(gain)), gain / full))

    with open(os.path.join(output_dir, "summary.csv"), "w", encoding="utf-8",
              newline="") as fh:
        fh.write("scheme,min_desired_gain_linear,min_desired_gain_db,"
                 "fraction_of_full_gain\n")
        for scheme, lin, db, frac in summary_rows:
            fh.write(f"{scheme},{lin:.17g},{db:.17g},{frac:.17g}\n")

    print(f"{'scheme':<8}{'min gain':>14}{'min gain dB':>14}{'fraction':>12}")
    for scheme, lin, db, frac in summary_rows:
        print(f"{scheme:<8}{lin:>14.4f}{db:>14.3f}{frac:>12.4f}")
    return best


def random_scenario_angles(base_seed: int, index: int, num_desired: int,
                           num_interference: int):
    """Uniform direction draws for one Monte Carlo scenario (disjoint sets)."""
    rng = np.random.default_rng(np.random.SeedSequence((int(base_seed), int(index))))
    while True:
        angles = rng.uniform(0.0, 180.0, num_desired + num_interference)
        desired = angles[:num_desired]
        interference = angles[num_desired:]
        if not set(desired.tolist()) & set(interference.tolist()):
            return desired.tolist(), interference.tolist()


def _sweep_cell_task(task):
    spec, value_index, scenario_index, base_seed = task
    desired, interference = random_scenario_angles(
        base_seed, scenario_index, len(spec.desired_angles_deg),
        len(spec.interference_angles_deg))
    cell_spec = replace(spec, desired_angles_deg=desired,
                        interference_angles_deg=interference)
    out = {}
    for scheme in spec.schemes:
        reports = [run_single(cell_spec, scheme, seed,
                              entropy=(base_seed, value_index, scenario_index))
                   for seed in spec.seeds]
        out[scheme] = best_report(reports).min_desired_gain
    return out


def run_sweep(spec: ScenarioSpec, field_name: str, values, num_scenarios: int,
              base_seed: int, output_dir):
    """Mean max-min gain per scheme over random scenarios, per sweep value.

    The same ``num_scenarios`` random direction sets (sizes taken from the
    base spec) are reused across sweep values so cells are paired.  The CSV
    reports the mean of per-scenario dB gains and each scheme's shortfall
    against the rotating scheme.  Returns ``{value: {scheme: mean_db}}``.
    """
    if field_name not in SWEEP_FIELDS:
        raise ScenarioError(
            f"sweep field must be one of {', '.join(SWEEP_FIELDS)}")
    if num_scenarios < 1:
        raise ScenarioError("number of sweep scenarios must be >= 1")
    os.makedirs(output_dir, exist_ok=True)

    tasks = []
    for vi, value in enumerate(values):
        cast = int if field_name == "num_antennas" else float
        swept = replace(spec, **{field_name: cast(value)})
        for j in range(num_scenarios):
            tasks.append((swept, vi, j, base_seed))
    cells = _pool_map(_sweep_cell_task, tasks)

    results = {}
    for vi, value in enumerate(values):
        rows = cells[vi * num_scenarios:(vi + 1) * num_scenarios]
        results[value] = {
            scheme: float(np.mean([gain_to_db(r[scheme]) for r in rows]))
            for scheme in spec.schemes}

    path = os.path.join(output_dir, "sweep.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("sweep_value,scheme,mean_maxmin_gain_db,delta_vs_ra_db\n")
        for value in values:
            means = results[value]
            ra_db = means.get("RA")
            for scheme in spec.schemes:
                delta = 0.0 if ra_db is None or scheme == "RA" \
                    else ra_db - means[scheme]
                fh.write(f"{value:.17g},{scheme},{means[scheme]:.17g},"
                         f"{delta:.17g}\n")
    return results
