"""Command-line driver: steady convergence, c_p sweeps, conditioning,
Killing-field decay and the source/sink demo.

Every command writes ``summary.csv`` into the output directory.  Extra
tables (energies, decay rates, condition numbers) and VTK fields are
written next to it.  Exit status is 0 when every solve converged, 1 when
some solve did not, and 2 on a usage error.
"""
import argparse
import csv
import logging
import math
import sys
import time
from pathlib import Path

import numpy as np

from .analysis import convergence_rates, fit_exponential
from .geometry import write_surface_vtk
from .problems import (StokesProblem, backward_euler_run, condition_number, discretize,
                       solve_steady)

log = logging.getLogger("tracefem")

SUMMARY_COLUMNS = ["case", "level", "h", "c_tau", "c_p", "c_u", "alpha", "dt", "l2_u", "h1_u",
                   "l2_uT", "l2_un", "l2_p", "minres_iters", "avg_inner_A", "avg_inner_S",
                   "wall_seconds"]
COMMANDS = ("converge", "sweep-cp", "cond-study", "killing", "source-sink")


class UsageError(Exception):
    pass


def parse_levels(text):
    """``"2..5"`` -> [2, 3, 4, 5]; ``"1,3"`` -> [1, 3]."""
    text = str(text).strip()
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split(".."))
            levels = list(range(lo, hi + 1))
        else:
            levels = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad level range {text!r}") from None
    if not levels or min(levels) < 0:
        raise UsageError(f"bad level range {text!r}")
    return levels


def parse_floats(text):
    try:
        vals = [float(t) for t in str(text).split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad value list {text!r}") from None
    if not vals:
        raise UsageError("empty value list")
    return vals


def read_config(path):
    """``key = value`` lines; ``#`` starts a comment.  Keys use flag names."""
    cfg = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, val = (t.strip() for t in line.split("=", 1))
        cfg[key.lstrip("-").replace("-", "_")] = val
    return cfg


def build_parser():
    p = argparse.ArgumentParser(prog="tracefem", description="TraceFEM surface Stokes solver")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="key=value file; command-line flags take precedence")
    p.add_argument("--levels", default=None, help="level range, e.g. 2..5 or 1,2,3")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--values", default="0.01,0.05,0.1,0.5,1,5,10", help="c_p values for sweep-cp")
    p.add_argument("--c-tau", type=float, default=None)
    p.add_argument("--c-p", type=float, default=1.0)
    p.add_argument("--c-u", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=0.1)
    p.add_argument("--t-end", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iters", type=int, default=300)
    p.add_argument("--normal-mode", default="p2_interpolant", choices=("p2_interpolant", "analytic"))
    p.add_argument("--surface-degree", type=int, default=4, choices=(2, 4))
    p.add_argument("--volume-degree", type=int, default=2, choices=(2, 3))
    p.add_argument("--shifts", type=int, default=5, help="random sphere shifts for cond-study")
    p.add_argument("--shift-level", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output-dir", default="out")
    p.add_argument("--vtk", action="store_true", help="write fields_<tag>.vtk")
    p.add_argument("--no-timing", action="store_true",
                   help="leave wall_seconds empty so that repeated runs give identical CSVs")
    p.add_argument("-v", "--verbose", action="store_true", help="also write residuals.csv")
    return p


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            cfg = read_config(args.config)
        except OSError as exc:
            parser.error(str(exc))
        except UsageError as exc:
            parser.error(str(exc))
        known = {a.dest for a in parser._actions}
        bad = sorted(set(cfg) - known - {"command"})
        if bad:
            parser.error(f"unknown config keys: {', '.join(bad)}")
        # flags win: config values only replace defaults
        for action in parser._actions:
            if action.dest in cfg and action.dest not in ("command", "help"):
                val = cfg[action.dest]
                if isinstance(action, argparse._StoreTrueAction):
                    val = val.lower() in ("1", "true", "yes", "on")
                elif action.type is not None:
                    val = action.type(val)
                action.default = val
        args = parser.parse_args(argv)
    return parser, args


def _problem(args, case, level, **kw):
    opts = dict(case=case, level=level, alpha=args.alpha, c_tau=args.c_tau, c_u=args.c_u,
                c_p=args.c_p, tol=args.tol, max_iters=args.max_iters, normal_mode=args.normal_mode,
                surface_degree=args.surface_degree, volume_degree=args.volume_degree)
    opts.update(kw)
    return StokesProblem(**opts)


def _fmt(v):
    if v is None or v == "":
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return str(int(v))
    return str(v)


def _row(problem, h, errors=None, iters="", inner_A="", inner_S="", wall="", dt=""):
    e = errors.as_dict() if errors is not None else {}
    return {
        "case": problem.case, "level": problem.level, "h": h, "c_tau": problem.c_tau,
        "c_p": problem.c_p, "c_u": problem.c_u, "alpha": problem.alpha, "dt": dt,
        **{k: e.get(k, "") for k in ("l2_u", "h1_u", "l2_uT", "l2_un", "l2_p")},
        "minres_iters": iters, "avg_inner_A": inner_A, "avg_inner_S": inner_S,
        "wall_seconds": wall,
    }


def write_csv(path, columns, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(r.get(c, "")) for c in columns])


def write_fields(path, disc, u, p):
    s = disc.surface
    U = disc.space.evaluate(u, s.parent, s.points)
    P = disc.space.evaluate(p, s.parent, s.points)
    write_surface_vtk(path, s, {"u": U, "p": P})


class Runner:
    def __init__(self, args):
        self.args = args
        self.out = Path(args.output_dir)
        self.rows = []
        self.residuals = []
        self.all_converged = True

    def _wall(self, seconds):
        return "" if self.args.no_timing else round(seconds, 3)

    def _record_steady(self, tag, sol):
        pr = sol.disc.problem
        self.all_converged &= sol.report.converged
        self.rows.append(_row(pr, sol.disc.h, sol.errors, sol.report.iterations,
                              sol.avg_inner_A, sol.avg_inner_S, self._wall(sol.wall_seconds)))
        self.residuals += [(tag, 0, k, r) for k, r in enumerate(sol.report.residual_history)]
        if self.args.vtk:
            write_fields(self.out / f"fields_{tag}.vtk", sol.disc, sol.u, sol.p)
        log.info("%s: %d MINRES iterations, residual %.2e", tag, sol.report.iterations,
                 sol.report.final_residual)

    def converge(self):
        levels = parse_levels(self.args.levels or "2..4")
        errs = []
        for lv in levels:
            sol = solve_steady(_problem(self.args, "sphere_manufactured", lv))
            self._record_steady(f"converge_l{lv}", sol)
            errs.append(sol.errors)
        if len(levels) > 1 and all(e is not None for e in errs):
            rates = []
            for name in ("l2_u", "h1_u", "l2_uT", "l2_un", "l2_p"):
                r = convergence_rates([getattr(e, name) for e in errs])
                rates += [{"norm": name, "from_level": a, "to_level": b, "rate": float(x)}
                          for a, b, x in zip(levels[:-1], levels[1:], r)]
            write_csv(self.out / "rates.csv", ["norm", "from_level", "to_level", "rate"], rates)

    def sweep_cp(self):
        level = self.args.level if self.args.level is not None else 4
        disc = None
        for cp in parse_floats(self.args.values):
            pr = _problem(self.args, "sphere_manufactured", level, c_p=cp)
            disc = disc or discretize(pr)
            disc.problem = pr
            self._record_steady(f"sweep_cp{cp:g}", solve_steady(pr, disc=disc))

    def cond_study(self):
        levels = parse_levels(self.args.levels or "1..3")
        rows = []
        for lv in levels:
            pr = _problem(self.args, "sphere_manufactured", lv)
            disc = discretize(pr)
            rows.append({"level": lv, "h": disc.h, "shift_x": 0.0, "shift_y": 0.0, "shift_z": 0.0,
                         "kappa": condition_number(pr, disc)})
        rng = np.random.default_rng(self.args.seed)
        lv = self.args.shift_level
        h = discretize(_problem(self.args, "sphere_manufactured", lv)).h
        for _ in range(self.args.shifts):
            d = rng.standard_normal(3)
            d *= rng.uniform(0.0, 0.5) * h / np.linalg.norm(d)
            pr = _problem(self.args, "sphere_manufactured", lv, center=tuple(d))
            rows.append({"level": lv, "h": h, "shift_x": d[0], "shift_y": d[1], "shift_z": d[2],
                         "kappa": condition_number(pr)})
        write_csv(self.out / "condition.csv",
                  ["level", "h", "shift_x", "shift_y", "shift_z", "kappa"], rows)
        base = [r for r in rows[: len(levels)]]
        if len(base) > 1:
            slope = np.polyfit(np.log([r["h"] for r in base]), np.log([r["kappa"] for r in base]), 1)[0]
            log.info("fitted exponent of cond in h: %.3f", slope)

    def _time_run(self, case, level, t_end, tag):
        pr = _problem(self.args, case, level, dt=self.args.dt, t_end=t_end,
                      alpha=1.0 / self.args.dt)
        ts = backward_euler_run(pr)
        ok = all(ts.converged)
        self.all_converged &= ok
        self.rows.append(_row(pr, ts.disc.h, None, max(ts.iteration_counts), ts.avg_inner_A,
                              ts.avg_inner_S, self._wall(ts.wall_seconds), pr.dt))
        write_csv(self.out / f"energy_{tag}.csv", ["step", "time", "kinetic_energy", "minres_iters"],
                  [{"step": k, "time": t, "kinetic_energy": e, "minres_iters": it}
                   for k, (t, e, it) in enumerate(zip(ts.times, ts.kinetic_energies,
                                                      ts.iteration_counts))])
        for step, hist in enumerate(ts.residual_histories, 1):
            self.residuals += [(tag, step, k, r) for k, r in enumerate(hist)]
        if self.args.vtk:
            write_fields(self.out / f"fields_{tag}.vtk", ts.disc, ts.final.u, ts.final.p)
        return ts

    def killing(self):
        level = self.args.level if self.args.level is not None else 2
        t_end = self.args.t_end if self.args.t_end is not None else 5.0
        tag = f"killing_l{level}_dt{self.args.dt:g}"
        ts = self._time_run("sphere_killing", level, t_end, tag)
        try:
            A, lam = fit_exponential(ts.times, ts.kinetic_energies, (2.0, 5.0))
        except ValueError as exc:
            log.warning("no exponential fit: %s", exc)
            A = lam = float("nan")
        write_csv(self.out / "decay.csv", ["level", "dt", "A", "lambda"],
                  [{"level": level, "dt": self.args.dt, "A": A, "lambda": lam}])
        if not math.isnan(lam):
            log.info("fitted decay rate lambda = %.4e", lam)

    def source_sink(self):
        level = self.args.level if self.args.level is not None else 3
        t_end = self.args.t_end if self.args.t_end is not None else 2.0
        ts = self._time_run("genus_source_sink", level, t_end, f"source_sink_l{level}")
        E = np.asarray(ts.kinetic_energies)
        if len(E) > 2 and E[-1] > 0:
            log.info("relative energy change in the last step: %.3e", abs(E[-1] - E[-2]) / E[-1])

    def run(self):
        self.out.mkdir(parents=True, exist_ok=True)
        getattr(self, self.args.command.replace("-", "_"))()
        write_csv(self.out / "summary.csv", SUMMARY_COLUMNS, self.rows)
        if self.args.verbose:
            write_csv(self.out / "residuals.csv", ["run", "step", "iteration", "residual"],
                      [dict(zip(("run", "step", "iteration", "residual"), r))
                       for r in self.residuals])
        return 0 if self.all_converged else 1


def validate(parser, args):
    if args.dt <= 0:
        parser.error("--dt must be positive")
    if args.t_end is not None and args.t_end < args.dt:
        parser.error("--t-end must be at least --dt")
    if args.command in ("converge", "cond-study") and args.level is not None:
        parser.error(f"{args.command} takes --levels, not --level")
    if args.command in ("sweep-cp", "killing", "source-sink") and args.levels is not None:
        parser.error(f"{args.command} takes --level, not --levels")
    if min(args.c_p, args.c_u) <= 0 or (args.c_tau is not None and args.c_tau <= 0):
        parser.error("stabilization constants must be positive")
    if args.shifts < 0 or args.max_iters < 1 or args.tol <= 0:
        parser.error("invalid solver or shift settings")


def main(argv=None):
    parser, args = parse_args(sys.argv[1:] if argv is None else argv)
    validate(parser, args)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    t0 = time.perf_counter()
    try:
        status = Runner(args).run()
    except UsageError as exc:
        parser.error(str(exc))
    log.info("done in %.1f s", time.perf_counter() - t0)
    return status


if __name__ == "__main__":
    sys.exit(main())
