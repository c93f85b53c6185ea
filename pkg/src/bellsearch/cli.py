"""Command-line harness for batch Bell-violation search experiments."""

import argparse
import sys

from . import experiments


def _add_common(parser, iterations_default=None, reps_default=1, state_default=None):
    parser.add_argument("--state", default=state_default,
                        help="state preset (name or name:param) or state-file path; "
                             "defaults to the scenario's maximally entangled preset")
    parser.add_argument("--iterations", type=int, default=iterations_default,
                        help="number of ascent iterations")
    parser.add_argument("--reps", type=int, default=reps_default,
                        help="number of seeded repetitions")
    parser.add_argument("--seed", type=int, default=0, help="master seed; repetition r uses seed+r")
    parser.add_argument("--a", type=float, default=None, help="update gain numerator")
    parser.add_argument("--b", type=float, default=None, help="probe gain numerator")
    parser.add_argument("--s", type=float, default=None, help="update gain decay exponent")
    parser.add_argument("--t", type=float, default=None, help="probe gain decay exponent")
    parser.add_argument("--out", default="runs", help="output directory for traces and summary")


def _int_list(text):
    return [int(part) for part in text.split(",") if part.strip()]


def _float_list(text):
    return [float(part) for part in text.split(",") if part.strip()]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bellsearch",
        description="Search maximal Bell-inequality violations of simulated states "
                    "by simultaneous-perturbation stochastic gradient ascent.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("single", help="one ad-hoc configuration, repeated over seeds")
    p.add_argument("--scenario", choices=["chsh", "mermin3", "cglmp3"], default="chsh")
    p.add_argument("--noise", default="ideal",
                   help="ideal | shot:n | angle:sigma | untrusted[:seed], composable with +")
    _add_common(p)

    p = sub.add_parser("fig1", help="convergence experiment across scenarios and states")
    p.add_argument("--scenario", choices=["chsh", "mermin3", "cglmp3", "all"], default="all")
    p.add_argument("--noise", default="ideal")
    _add_common(p, state_default=None)

    p = sub.add_parser("fig2", help="shot-noise robustness sweep (chsh)")
    p.add_argument("--scenario", choices=["chsh", "mermin3", "cglmp3"], default="chsh")
    p.add_argument("--photons", type=_int_list, default=[200, 500, 1000, 5000, 10000],
                   help="comma-separated photon pair counts per setting")
    _add_common(p, iterations_default=50, reps_default=10)

    p = sub.add_parser("fig3", help="search vs tomography baseline at matched budgets (chsh)")
    p.add_argument("--scenario", choices=["chsh", "mermin3", "cglmp3"], default="chsh")
    p.add_argument("--photons", type=int, default=2000, help="photon pairs per setting for the search")
    p.add_argument("--sigmas", type=_float_list, default=[0.02, 0.05, 0.10],
                   help="comma-separated angle-error levels (radians)")
    p.add_argument("--trials", type=int, default=10, help="paired trials per error level")
    p.add_argument("--tomography-reps", type=int, default=60, help="tomography repetitions per trial")
    _add_common(p, iterations_default=60)

    p = sub.add_parser("fig4", help="hidden-offset (untrusted device) runs (chsh)")
    p.add_argument("--scenario", choices=["chsh", "mermin3", "cglmp3"], default="chsh")
    _add_common(p, iterations_default=50, reps_default=5)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    gains = dict(a=args.a, b=args.b, s=args.s, t=args.t)
    try:
        if args.command == "single":
            experiments.run_single(scenario=args.scenario, state=args.state, noise=args.noise,
                                   iterations=args.iterations, reps=args.reps, seed=args.seed,
                                   out_dir=args.out, **gains)
        elif args.command == "fig1":
            experiments.run_convergence(scenario=args.scenario, state=args.state, noise=args.noise,
                                        iterations=args.iterations, reps=args.reps, seed=args.seed,
                                        out_dir=args.out, **gains)
        elif args.command == "fig2":
            experiments.run_shot_noise_sweep(photons=args.photons, state=args.state,
                                             iterations=args.iterations, reps=args.reps,
                                             seed=args.seed, out_dir=args.out,
                                             scenario=args.scenario, **gains)
        elif args.command == "fig3":
            experiments.run_search_vs_tomography(photons=args.photons, sigmas=args.sigmas,
                                       trials=args.trials, iterations=args.iterations,
                                       tomography_repetitions=args.tomography_reps, state=args.state,
                                       seed=args.seed, out_dir=args.out,
                                       scenario=args.scenario, **gains)
        elif args.command == "fig4":
            experiments.run_untrusted(state=args.state, iterations=args.iterations,
                                      reps=args.reps, seed=args.seed, out_dir=args.out,
                                      scenario=args.scenario, **gains)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
