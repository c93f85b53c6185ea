"""Batch experiment runners with CSV traces and JSON summaries.

Every repetition r of an experiment uses seed = master_seed + r. Trace files
carry the exact header ``iteration,v_current,v_plus,v_minus,alpha,beta,g,shots_used``
with one row per iteration; floats are written with full repr so identical
configurations reproduce byte-identical files. Summary statistics use the
population convention (std with ddof=0).
"""

import json
import time
from pathlib import Path

import numpy as np

from .oracles import FiniteShot, MeasurementOracle, SettingError, Untrusted, parse_noise
from .scenarios import get_scenario, quantum_maximum
from .spsa import SpsaConfig, random_initial_theta, run
from .states import parse_state_spec
from .tomography import chsh_max_value, tomography_estimate, matched_tomography_shots

TRACE_HEADER = "iteration,v_current,v_plus,v_minus,alpha,beta,g,shots_used"

# States shown per scenario in the convergence experiment when none is given:
# maximally entangled, a mixed variant, and a partially entangled pure state.
CONVERGENCE_STATES = {
    "chsh": ("singlet", "werner:0.9", "partial:0.5235987755982988"),
    "mermin3": ("ghz3", "ghz_mixed:0.9", "partial_ghz:0.5235987755982988"),
    "cglmp3": ("max3", "isotropic3:0.9", "weighted3:0.7923"),
}

DEFAULT_STATES = {"chsh": "singlet", "mermin3": "ghz3", "cglmp3": "max3"}


def make_config(iterations, a=None, b=None, s=None, t=None, stability_offset=None):
    """SpsaConfig with the library defaults wherever an override is None."""
    base = SpsaConfig()
    return SpsaConfig(
        a=base.a if a is None else a,
        b=base.b if b is None else b,
        s=base.s if s is None else s,
        t=base.t if t is None else t,
        stability_offset=base.stability_offset if stability_offset is None else stability_offset,
        iterations=iterations,
    )


def spsa_repetition(state, scenario, noise, config, seed):
    """One seeded ascent repetition; returns (trace, oracle)."""
    scenario = get_scenario(scenario)
    rng = np.random.default_rng(seed)
    oracle = MeasurementOracle(state, scenario, noise=noise, rng=rng)
    theta0 = random_initial_theta(scenario, rng)
    trace = run(oracle, theta0, config, rng, scenario=scenario.id)
    return trace, oracle


def summarize(traces):
    """Aggregate statistics of the final values of one or more run traces."""
    if not traces:
        raise ValueError("summarize needs at least one trace")
    finals = [float(t.final_value) for t in traces]
    return _stats(finals)


def _stats(values):
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("no values to summarize")
    return {
        "finals": [float(v) for v in arr],
        "mean": float(arr.mean()),
        "std": float(arr.std()),
        "min": float(arr.min()),
        "max": float(arr.max()),
    }


def write_trace(path, trace):
    path = Path(path)
    lines = [TRACE_HEADER]
    for r in trace.records:
        lines.append(
            f"{r.k},{float(r.v_current)!r},{float(r.v_plus)!r},{float(r.v_minus)!r},"
            f"{float(r.alpha)!r},{float(r.beta)!r},{float(r.g)!r},{int(r.shots_used)}"
        )
    path.write_text("\n".join(lines) + "\n")


def read_trace(path):
    """Parse a trace CSV back into a list of per-iteration dicts."""
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != TRACE_HEADER:
        raise ValueError(f"{path} is not a trace file")
    columns = TRACE_HEADER.split(",")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        row = dict(zip(columns, parts))
        row["iteration"] = int(row["iteration"])
        row["shots_used"] = int(row["shots_used"])
        for key in columns[1:-1]:
            row[key] = float(row[key])
        rows.append(row)
    return rows


def write_summary(out_dir, payload):
    path = Path(out_dir) / "summary.json"
    path.write_text(json.dumps(payload, indent=2) + "\n")
    return path


def _slug(text):
    return str(text).replace(":", "-").replace("/", "-")


def _config_echo(experiment, scenario, state, noise, config, reps, seed, out_dir, **extra):
    echo = {
        "experiment": experiment,
        "scenario": scenario,
        "state": str(state),
        "noise": str(noise),
        "iterations": config.iterations,
        "reps": reps,
        "seed": seed,
        "a": config.a,
        "b": config.b,
        "s": config.s,
        "t": config.t,
        "stability_offset": config.stability_offset,
        "out": str(out_dir),
    }
    echo.update(extra)
    return echo


def _run_group(state, scenario, noise_components, config, seed, reps, out_dir, prefix):
    """Run ``reps`` seeded repetitions, write their traces, return stats + shots."""
    traces = []
    total_shots = 0
    for r in range(reps):
        trace, oracle = spsa_repetition(state, scenario, noise_components, config, seed + r)
        write_trace(Path(out_dir) / f"{prefix}rep{r:03d}.csv", trace)
        traces.append(trace)
        total_shots += oracle.shot_counter
    group = summarize(traces)
    group["total_shots"] = total_shots
    return group


def run_single(scenario="chsh", state=None, noise="ideal", iterations=None,
               reps=1, seed=0, a=None, b=None, s=None, t=None, out_dir="runs"):
    """Ad-hoc experiment: repeated seeded runs of one configuration.

    ``state=None`` picks the scenario's maximally entangled preset.
    """
    started = time.perf_counter()
    scen = get_scenario(scenario)
    state = DEFAULT_STATES[scen.id] if state is None else state
    target = parse_state_spec(state)
    components = parse_noise(noise)
    config = make_config(scen.default_iterations if iterations is None else iterations,
                         a, b, s, t)
    if reps < 1:
        raise ValueError("reps must be at least 1")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    group = _run_group(target, scen, components, config, seed, reps, out_dir, "trace_")
    payload = {"config": _config_echo("single", scen.id, state, noise, config, reps, seed, out_dir),
               **group,
               "reference_maximum": float(quantum_maximum(scen)),
               "wall_time_seconds": time.perf_counter() - started}
    if scen.id == "chsh":
        payload["state_max_value"] = float(chsh_max_value(target))
    write_summary(out_dir, payload)
    return payload


def run_convergence(scenario="all", state=None, noise="ideal", iterations=None,
                    reps=1, seed=0, a=None, b=None, s=None, t=None, out_dir="runs"):
    """Convergence experiment: per-iteration searches across scenarios and states."""
    started = time.perf_counter()
    if scenario == "all":
        scenario_ids = tuple(CONVERGENCE_STATES)
    else:
        scenario_ids = (get_scenario(scenario).id,)
    if reps < 1:
        raise ValueError("reps must be at least 1")
    components = parse_noise(noise)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    groups = []
    for scen_id in scenario_ids:
        scen = get_scenario(scen_id)
        config = make_config(scen.default_iterations if iterations is None else iterations,
                             a, b, s, t)
        state_specs = (state,) if state is not None else CONVERGENCE_STATES[scen_id]
        for spec in state_specs:
            target = parse_state_spec(spec)
            prefix = f"trace_{scen.id}_{_slug(spec)}_"
            group = _run_group(target, scen, components, config, seed, reps, out_dir, prefix)
            group["scenario"] = scen.id
            group["state"] = str(spec)
            group["iterations"] = config.iterations
            group["reference_maximum"] = float(quantum_maximum(scen))
            if scen.id == "chsh":
                group["state_max_value"] = float(chsh_max_value(target))
            groups.append(group)

    echo_config = make_config(1, a, b, s, t)
    config_echo = _config_echo("convergence", scenario,
                               state if state is not None else "default-set",
                               noise, echo_config, reps, seed, out_dir)
    config_echo["iterations"] = iterations if iterations is not None else "scenario-default"
    payload = {"config": config_echo, "groups": groups,
               "wall_time_seconds": time.perf_counter() - started}
    write_summary(out_dir, payload)
    return payload


def run_shot_noise_sweep(photons=(200, 500, 1000, 5000, 10000), state=None,
                         iterations=50, reps=10, seed=0, a=None, b=None, s=None, t=None,
                         out_dir="runs", scenario="chsh"):
    """Final searched values under finite photon statistics, swept over the pair count."""
    started = time.perf_counter()
    scen = _require_chsh(scenario, "shot-noise sweep")
    state = DEFAULT_STATES["chsh"] if state is None else state
    target = parse_state_spec(state)
    config = make_config(iterations, a, b, s, t)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    groups = []
    for n in photons:
        group = _run_group(target, scen, (FiniteShot(int(n)),), config, seed, reps,
                           out_dir, f"trace_n{int(n)}_")
        group["pairs_per_setting"] = int(n)
        groups.append(group)

    config_echo = _config_echo("shot_noise_sweep", scen.id, state, "shot:<n>", config,
                               reps, seed, out_dir, photons=[int(n) for n in photons])
    payload = {"config": config_echo, "groups": groups,
               "reference_maximum": float(quantum_maximum(scen)),
               "wall_time_seconds": time.perf_counter() - started}
    write_summary(out_dir, payload)
    return payload


def run_search_vs_tomography(photons=2000, sigmas=(0.02, 0.05, 0.10), trials=10,
                             iterations=60, tomography_repetitions=60, state=None,
                             seed=0, a=None, b=None, s=None, t=None,
                             out_dir="runs", scenario="chsh"):
    """Paired comparison of the search and the tomography baseline at matched photon budgets.

    Per trial and error level: one 60-iteration search with finite statistics
    plus angle error, against the mean of 60 tomography repetitions whose
    shots are chosen to consume the same photon total.
    """
    started = time.perf_counter()
    scen = _require_chsh(scenario, "search-vs-tomography comparison")
    state = DEFAULT_STATES["chsh"] if state is None else state
    target = parse_state_spec(state)
    n = int(photons)
    config = make_config(iterations, a, b, s, t)
    shots = matched_tomography_shots(n, iterations=iterations,
                                     tomography_repetitions=tomography_repetitions)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    groups = []
    for sigma in sigmas:
        noise = (SettingError(float(sigma)), FiniteShot(n))
        search_traces = []
        search_shots = 0
        tomography_trial_means = []
        tomography_shots = 0
        for trial in range(trials):
            trial_seed = seed + trial
            trace, oracle = spsa_repetition(target, scen, noise, config, trial_seed)
            write_trace(out_dir / f"trace_sigma{sigma}_trial{trial:03d}.csv", trace)
            search_traces.append(trace)
            search_shots += oracle.shot_counter

            tomography_rng = np.random.default_rng(10_000_019 + trial_seed)
            estimates = [tomography_estimate(target, shots,
                                             noise=(SettingError(float(sigma)),),
                                             rng=tomography_rng)
                         for _ in range(tomography_repetitions)]
            tomography_trial_means.append(float(np.mean(estimates)))
            tomography_shots += tomography_repetitions * 9 * shots

        search_stats = summarize(search_traces)
        search_stats["total_shots"] = search_shots
        tomography_stats = _stats(tomography_trial_means)
        tomography_stats["trial_means"] = tomography_stats.pop("finals")
        tomography_stats["total_shots"] = tomography_shots
        groups.append({"sigma": float(sigma),
                       "search": search_stats,
                       "tomography": tomography_stats,
                       "search_minus_tomography": search_stats["mean"] - tomography_stats["mean"]})

    config_echo = _config_echo("search_vs_tomography", scen.id, state,
                               f"angle:<sigma>+shot:{n}", config,
                               trials, seed, out_dir, sigmas=[float(x) for x in sigmas],
                               pairs_per_setting=n,
                               tomography_repetitions=tomography_repetitions,
                               tomography_shots_per_setting=shots)
    payload = {"config": config_echo, "groups": groups,
               "reference_maximum": float(quantum_maximum(scen)),
               "wall_time_seconds": time.perf_counter() - started}
    write_summary(out_dir, payload)
    return payload


def run_untrusted(state=None, iterations=50, reps=5, seed=0, a=None, b=None,
                  s=None, t=None, out_dir="runs", scenario="chsh"):
    """Searches through devices whose settings carry hidden offsets, one per seed."""
    started = time.perf_counter()
    scen = _require_chsh(scenario, "untrusted-device experiment")
    state = DEFAULT_STATES["chsh"] if state is None else state
    target = parse_state_spec(state)
    config = make_config(iterations, a, b, s, t)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    group = _run_group(target, scen, (Untrusted(),), config, seed, reps, out_dir, "trace_")
    config_echo = _config_echo("untrusted", scen.id, state, "untrusted", config, reps, seed, out_dir)
    payload = {"config": config_echo, **group,
               "reference_maximum": float(quantum_maximum(scen)),
               "state_max_value": float(chsh_max_value(target)),
               "wall_time_seconds": time.perf_counter() - started}
    write_summary(out_dir, payload)
    return payload


def _require_chsh(scenario, label):
    scen = get_scenario(scenario)
    if scen.id != "chsh":
        raise ValueError(f"the {label} runs on the chsh scenario only, got {scen.id!r}")
    return scen
