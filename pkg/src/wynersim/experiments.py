"""Monte Carlo drivers reproducing the reference figures at desk scale.

Each driver defines a sweep grid and a pure per-trial function; trials are
self-seeded from (master_seed, trial index), so results are bitwise
reproducible and the first N trials of a longer run equal a run of N trials.
Parallel execution maps over trials and reduces in trial order, giving
byte-identical output to serial runs.
"""

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from . import beamforming as bf
from . import channel as ch
from . import feedback as fb
from .bitalloc import BitSplit, delta_tilde, optimal_split
from .errors import ConfigError

FIGURES = {
    "fig3": "high_sinr_approx",
    "fig4": "sum_rate_vs_k",
    "fig5": "mean_loss_vs_bd",
    "fig6": "compare_strategies",
    "fig7": "sum_rate_vs_btot",
    "fig8": "split_vs_alpha",
    "fig9": "asymmetric_cells",
}

ARM_GEBF_FULL = "gebf_full"
ARM_ZF_FULL = "zf_full"
ARM_GEBF_LF_OPT = "gebf_lf_opt"
ARM_GEBF_LF_EQUAL = "gebf_lf_equal"
ARM_EBF_LF = "ebf_lf"
ARM_ZF_LF = "zf_lf"


@dataclass
class ExperimentSpec:
    figure_id: str
    trials: int = 0  # 0 = per-figure default
    master_seed: int = 0
    params: dict = field(default_factory=dict)


@dataclass
class ResultTable:
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)

    def to_csv(self):
        """CSV bytes: UTF-8, LF endings, '.' decimals, header row."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_fmt(v) for v in row])
        return buf.getvalue().encode("utf-8")

    def to_json(self):
        doc = {"meta": self.meta,
               "columns": self.columns,
               "rows": [list(r) for r in self.rows]}
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return v


def db_to_lin(db):
    return 10.0 ** (db / 10.0)


def worker_count():
    """Worker cap from SIM_THREADS (0 or unset handled here; 0 = auto)."""
    raw = os.environ.get("SIM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError("SIM_THREADS must be an integer, got %r" % raw)
    if n < 0:
        raise ConfigError("SIM_THREADS must be >= 0")
    if n == 0:
        return os.cpu_count() or 1
    return n


def _collect(trial_fn, trials):
    """(trials, M) matrix of per-trial metrics, in trial order."""
    nw = worker_count()
    if nw <= 1 or trials < 2 * nw:
        out = [trial_fn(t) for t in range(trials)]
    else:
        chunk = max(1, trials // (4 * nw))
        with ProcessPoolExecutor(max_workers=nw) as ex:
            out = list(ex.map(trial_fn, range(trials), chunksize=chunk))
    return np.vstack(out)


def _mean_stderr(col):
    mean = float(np.mean(col))
    stderr = float(np.std(col, ddof=1) / math.sqrt(len(col)))
    return mean, stderr


# ---------------------------------------------------------------------------
# limited-feedback plumbing shared by the drivers

class _TrialQuantizer:
    """Caches per-(user, split) quantization within one trial.

    Arms that share a split size also share codebooks and quantized records
    (common random numbers); distinct splits draw fresh codebooks keyed on
    (master_seed, trial, user, role, bits).
    """

    def __init__(self, channels, topology, master_seed, trial):
        self.channels = channels
        self.topology = topology
        self.base = (master_seed, trial)
        self._cache = {}

    def record(self, user, split):
        key = (user, split.B_d, split.B_i)
        if key not in self._cache:
            g = self.channels.g[user]
            self._cache[key] = fb.user_feedback(
                self.channels.h[user], g, split,
                seed_d=self.base + (user, fb.SEED_DESIRED, split.B_d),
                seed_i=self.base + (user, fb.SEED_INTERF, split.B_i))
        return self._cache[key]

    def views(self, splits, params):
        records = []
        for k in range(self.topology.K):
            r = self.record(k, splits[k])
            records.append(fb.QuantizedCsi(h_hat=r.h_hat, g_hat=r.g_hat,
                                           h_norm=r.h_norm, g_norm=r.g_norm,
                                           rho_d=params[k].rho_d,
                                           alpha=params[k].alpha))
        return fb.exchange(records, self.topology)


def _lf_beams(views, strategy):
    beams = []
    for v in views:
        if strategy == bf.EBF or v.caused_interference is None:
            beams.append(bf.ebf(v.own_desired[0]))
        elif strategy == bf.GEBF:
            beams.append(fb.gebf_limited(v))
        elif strategy == bf.ZF:
            beams.append(bf.zf(v.own_desired[0], v.caused_interference[0]))
        else:
            raise ConfigError("unknown limited-feedback strategy %r" % strategy)
    return beams


def _lf_report(quantizer, params, splits, strategy):
    views = quantizer.views(splits, params)
    beams = _lf_beams(views, strategy)
    return bf.sinr(quantizer.channels, beams, params, quantizer.topology)


def _symmetric_params(K, rho_d, alpha, B_tot=0):
    return [ch.CellParams(rho_d=rho_d, alpha=alpha, B_tot=B_tot)] * K


# ---------------------------------------------------------------------------
# fig3: exact vs high-SINR approximated sum-rate, GEBF full CSI

def _trial_fig3(cfg, trial):
    K, Nt, alphas, rhos, seed = cfg
    topo = ch.Topology(ch.CIRCULAR, K)
    channels = ch.generate(topo, Nt, (seed, trial))
    out = []
    for alpha in alphas:
        for rho in rhos:
            params = _symmetric_params(K, rho, alpha)
            beams = bf.plan_full_csi(bf.GEBF, channels, params, topo)
            rep = bf.sinr(channels, beams, params, topo)
            out.extend([rep.sum_exact, rep.sum_highsinr])
    return np.array(out)


def _run_fig3(spec, p):
    alphas = p["alpha"]
    rhos = p["rho_d_db"]
    cfg = (p["K"], p["Nt"], alphas, [db_to_lin(r) for r in rhos], spec.master_seed)
    data = _collect(partial(_trial_fig3, cfg), spec.trials)
    rows, i = [], 0
    for alpha in alphas:
        for rho_db in rhos:
            for metric in ("sum_exact", "sum_highsinr"):
                m, s = _mean_stderr(data[:, i])
                rows.append((rho_db, alpha, metric, m, s, spec.trials))
                i += 1
    return ResultTable(["rho_d_db", "alpha", "metric", "mean", "stderr", "trials"],
                       rows)


# ---------------------------------------------------------------------------
# fig4: GEBF full-CSI sum-rate vs number of cells
# (the DPC upper-bound arm of the original figure needs external results and
# is deliberately absent)

def _trial_fig4(cfg, trial):
    Nt, alphas, rho, k_list, seed = cfg
    out = []
    for K in k_list:
        topo = ch.Topology(ch.CIRCULAR, K)
        channels = ch.generate(topo, Nt, (seed, trial, K))
        for alpha in alphas:
            params = _symmetric_params(K, rho, alpha)
            beams = bf.plan_full_csi(bf.GEBF, channels, params, topo)
            out.append(bf.sinr(channels, beams, params, topo).sum_exact)
    return np.array(out)


def _run_fig4(spec, p):
    cfg = (p["Nt"], p["alpha"], db_to_lin(p["rho_d_db"]), p["K"], spec.master_seed)
    data = _collect(partial(_trial_fig4, cfg), spec.trials)
    rows, i = [], 0
    for K in p["K"]:
        for alpha in p["alpha"]:
            m, s = _mean_stderr(data[:, i])
            rows.append((K, alpha, "sum_rate_gebf_full", m, s, spec.trials))
            i += 1
    return ResultTable(["K", "alpha", "metric", "mean", "stderr", "trials"], rows)


# ---------------------------------------------------------------------------
# fig5: mean sum-rate loss vs B_d, with the analytic bound

def _trial_fig5(cfg, trial):
    K, Nt, alphas, rho, B_tot, bd_grid, seed = cfg
    topo = ch.Topology(ch.CIRCULAR, K)
    channels = ch.generate(topo, Nt, (seed, trial))
    quant = _TrialQuantizer(channels, topo, seed, trial)

    full = {}
    for alpha in alphas:
        params = _symmetric_params(K, rho, alpha, B_tot)
        beams = bf.plan_full_csi(bf.GEBF, channels, params, topo)
        full[alpha] = bf.sinr(channels, beams, params, topo).sum_highsinr

    out = []
    for b_d in bd_grid:
        splits = [BitSplit(b_d, B_tot - b_d)] * K
        for alpha in alphas:
            params = _symmetric_params(K, rho, alpha, B_tot)
            rep = _lf_report(quant, params, splits, bf.GEBF)
            out.append(full[alpha] - rep.sum_highsinr)
    return np.array(out)


def _run_fig5(spec, p):
    alphas = p["alpha"]
    rho = db_to_lin(p["rho_d_db"])
    B_tot = p["B_tot"]
    bd_grid = list(range(p["B_d_min"], p["B_d_max"] + 1))
    cfg = (p["K"], p["Nt"], alphas, rho, B_tot, bd_grid, spec.master_seed)
    data = _collect(partial(_trial_fig5, cfg), spec.trials)
    rows, i = [], 0
    for b_d in bd_grid:
        for alpha in alphas:
            m, s = _mean_stderr(data[:, i])
            bound = p["K"] * delta_tilde(b_d, B_tot, alpha * rho)
            rows.append((b_d, alpha, m, s, bound))
            i += 1
    return ResultTable(["B_d", "alpha", "mean_loss_bits", "stderr", "bound_bits"],
                       rows)


# ---------------------------------------------------------------------------
# fig6: strategy comparison vs alpha

_FIG6_ARMS = (ARM_GEBF_FULL, ARM_ZF_FULL, ARM_GEBF_LF_OPT, ARM_GEBF_LF_EQUAL,
              ARM_EBF_LF, ARM_ZF_LF)


def _trial_fig6(cfg, trial):
    K, Nt, alphas, rho, B_tot, seed = cfg
    topo = ch.Topology(ch.CIRCULAR, K)
    channels = ch.generate(topo, Nt, (seed, trial))
    quant = _TrialQuantizer(channels, topo, seed, trial)
    half = BitSplit(B_tot // 2, B_tot - B_tot // 2)
    all_d = BitSplit(B_tot, 0)

    out = []
    for alpha in alphas:
        params = _symmetric_params(K, rho, alpha, B_tot)
        opt = optimal_split(B_tot, alpha * rho)
        for arm in _FIG6_ARMS:
            if arm == ARM_GEBF_FULL:
                beams = bf.plan_full_csi(bf.GEBF, channels, params, topo)
                rep = bf.sinr(channels, beams, params, topo)
            elif arm == ARM_ZF_FULL:
                beams = bf.plan_full_csi(bf.ZF, channels, params, topo)
                rep = bf.sinr(channels, beams, params, topo)
            elif arm == ARM_GEBF_LF_OPT:
                rep = _lf_report(quant, params, [opt] * K, bf.GEBF)
            elif arm == ARM_GEBF_LF_EQUAL:
                rep = _lf_report(quant, params, [half] * K, bf.GEBF)
            elif arm == ARM_EBF_LF:
                rep = _lf_report(quant, params, [all_d] * K, bf.EBF)
            else:
                rep = _lf_report(quant, params, [half] * K, bf.ZF)
            out.append(rep.sum_exact)
    return np.array(out)


def _run_fig6(spec, p):
    _require_even_btot(p["B_tot"])
    cfg = (p["K"], p["Nt"], p["alpha"], db_to_lin(p["rho_d_db"]), p["B_tot"],
           spec.master_seed)
    data = _collect(partial(_trial_fig6, cfg), spec.trials)
    rows, i = [], 0
    for alpha in p["alpha"]:
        for arm in _FIG6_ARMS:
            m, s = _mean_stderr(data[:, i])
            rows.append((alpha, arm, m, s, spec.trials))
            i += 1
    return ResultTable(["alpha", "arm", "mean", "stderr", "trials"], rows)


# ---------------------------------------------------------------------------
# fig7: GEBF sum-rate vs total feedback budget

def _trial_fig7(cfg, trial):
    K, Nt, alphas, rho, btot_grid, seed = cfg
    topo = ch.Topology(ch.CIRCULAR, K)
    channels = ch.generate(topo, Nt, (seed, trial))
    quant = _TrialQuantizer(channels, topo, seed, trial)
    out = []
    for B_tot in btot_grid:
        for alpha in alphas:
            params = _symmetric_params(K, rho, alpha, B_tot)
            beams = bf.plan_full_csi(bf.GEBF, channels, params, topo)
            out.append(bf.sinr(channels, beams, params, topo).sum_exact)
            opt = optimal_split(B_tot, alpha * rho)
            out.append(_lf_report(quant, params, [opt] * K, bf.GEBF).sum_exact)
    return np.array(out)


def _run_fig7(spec, p):
    cfg = (p["K"], p["Nt"], p["alpha"], db_to_lin(p["rho_d_db"]), p["B_tot"],
           spec.master_seed)
    data = _collect(partial(_trial_fig7, cfg), spec.trials)
    rows, i = [], 0
    for B_tot in p["B_tot"]:
        for alpha in p["alpha"]:
            for arm in (ARM_GEBF_FULL, ARM_GEBF_LF_OPT):
                m, s = _mean_stderr(data[:, i])
                rows.append((B_tot, alpha, arm, m, s, spec.trials))
                i += 1
    return ResultTable(["B_tot", "alpha", "arm", "mean", "stderr", "trials"], rows)


# ---------------------------------------------------------------------------
# fig8: analytic bit partition vs interference-to-desired ratio (no MC)

def _run_fig8(spec, p):
    rho = db_to_lin(p["rho_d_db"])
    B_tot = p["B_tot"]
    clamp = p["clamp"]
    rows = []
    n_steps = int(round((p["alpha_db_max"] - p["alpha_db_min"]) / p["alpha_db_step"]))
    for j in range(n_steps + 1):
        a_db = p["alpha_db_min"] + j * p["alpha_db_step"]
        split = optimal_split(B_tot, db_to_lin(a_db) * rho, clamp=clamp)
        rows.append((a_db, split.B_d, split.B_i))
    return ResultTable(["alpha_tilde_db", "B_d", "B_i"], rows)


# ---------------------------------------------------------------------------
# fig9: asymmetric cells, per-user adaptive splits, finite linear array

_FIG9_ARMS = (ARM_GEBF_FULL, ARM_GEBF_LF_OPT, ARM_GEBF_LF_EQUAL,
              ARM_EBF_LF, ARM_ZF_LF)


def _trial_fig9(cfg, trial):
    K, Nt, rhos, B_tot, lo_db, hi_db, seed = cfg
    topo = ch.Topology(ch.FINITE, K)
    channels = ch.generate(topo, Nt, (seed, trial))
    alphas = ch.alpha_profile(ch.RandomDbAlpha(lo_db, hi_db), K, (seed, trial))
    quant = _TrialQuantizer(channels, topo, seed, trial)
    half = BitSplit(B_tot // 2, B_tot - B_tot // 2)
    all_d = BitSplit(B_tot, 0)
    edge = BitSplit(B_tot, 0)  # last user has no interferer to report

    out = []
    for rho in rhos:
        params = [ch.CellParams(rho_d=rho, alpha=alphas[k], B_tot=B_tot)
                  for k in range(K)]
        opt = [optimal_split(B_tot, alphas[k] * rho) for k in range(K - 1)] + [edge]
        equal = [half] * (K - 1) + [edge]
        for arm in _FIG9_ARMS:
            if arm == ARM_GEBF_FULL:
                beams = bf.plan_full_csi(bf.GEBF, channels, params, topo)
                rep = bf.sinr(channels, beams, params, topo)
            elif arm == ARM_GEBF_LF_OPT:
                rep = _lf_report(quant, params, opt, bf.GEBF)
            elif arm == ARM_GEBF_LF_EQUAL:
                rep = _lf_report(quant, params, equal, bf.GEBF)
            elif arm == ARM_EBF_LF:
                rep = _lf_report(quant, params, [all_d] * K, bf.EBF)
            else:
                rep = _lf_report(quant, params, equal, bf.ZF)
            out.append(rep.sum_exact / K)
    return np.array(out)


def _run_fig9(spec, p):
    _require_even_btot(p["B_tot"])
    rhos = p["rho_d_db"]
    cfg = (p["K"], p["Nt"], [db_to_lin(r) for r in rhos], p["B_tot"],
           p["alpha_db_min"], p["alpha_db_max"], spec.master_seed)
    data = _collect(partial(_trial_fig9, cfg), spec.trials)
    rows, i = [], 0
    for rho_db in rhos:
        for arm in _FIG9_ARMS:
            m, s = _mean_stderr(data[:, i])
            rows.append((rho_db, arm, m, s, spec.trials))
            i += 1
    return ResultTable(["rho_d_db", "arm", "mean_per_cell_rate", "stderr", "trials"],
                       rows)


def _require_even_btot(B_tot):
    if B_tot % 2 != 0:
        raise ConfigError(
            "B_tot=%d is odd; the equal-split ZF/GEBF arms need an even budget "
            "(pick B_tot +/- 1)" % B_tot)


# ---------------------------------------------------------------------------

_DEFAULTS = {
    "fig3": {"K": 4, "Nt": 4, "alpha": [0.001, 0.1, 1.0],
             "rho_d_db": [0.0, 5.0, 10.0, 15.0, 20.0]},
    "fig4": {"K": [2, 4, 8, 16], "Nt": 4, "alpha": [0.001, 0.1, 1.0],
             "rho_d_db": 10.0},
    "fig5": {"K": 2, "Nt": 2, "alpha": [0.001, 0.1, 1.0], "rho_d_db": 10.0,
             "B_tot": 15, "B_d_min": 3, "B_d_max": 12},
    "fig6": {"K": 2, "Nt": 2, "alpha": [0.001, 0.01, 0.1, 0.5, 1.0],
             "rho_d_db": 10.0, "B_tot": 6},
    "fig7": {"K": 2, "Nt": 2, "alpha": [0.001, 0.1, 1.0], "rho_d_db": 10.0,
             "B_tot": [2, 4, 6, 8, 10, 12]},
    "fig8": {"rho_d_db": 10.0, "B_tot": 8, "alpha_db_min": -40.0,
             "alpha_db_max": 0.0, "alpha_db_step": 0.5, "clamp": None},
    "fig9": {"K": 200, "Nt": 2, "rho_d_db": [5.0, 10.0, 15.0], "B_tot": 6,
             "alpha_db_min": -40.0, "alpha_db_max": 0.0},
}

# fig9 averages over K cells per trial, so far fewer trials reach tight CIs;
# fig8 is analytic and ignores the trial count.
_DEFAULT_TRIALS = {"fig3": 10000, "fig4": 10000, "fig5": 10000, "fig6": 10000,
                   "fig7": 2000, "fig8": 100, "fig9": 200}

_RUNNERS = {"fig3": _run_fig3, "fig4": _run_fig4, "fig5": _run_fig5,
            "fig6": _run_fig6, "fig7": _run_fig7, "fig8": _run_fig8,
            "fig9": _run_fig9}

_ALIASES = {name: fig for fig, name in FIGURES.items()}


def canonical_figure_id(figure_id):
    if figure_id in _RUNNERS:
        return figure_id
    if figure_id in _ALIASES:
        return _ALIASES[figure_id]
    raise ConfigError("unknown figure id %r (use one of %s)"
                      % (figure_id, ", ".join(sorted(_RUNNERS))))


def run(spec):
    """Execute one experiment spec and return its ResultTable."""
    fig = canonical_figure_id(spec.figure_id)
    params = dict(_DEFAULTS[fig])
    unknown = set(spec.params) - set(params)
    if unknown:
        raise ConfigError("unknown parameter(s) for %s: %s"
                          % (fig, ", ".join(sorted(unknown))))
    params.update(spec.params)
    trials = spec.trials or _DEFAULT_TRIALS[fig]
    if fig != "fig8" and trials < 100:
        raise ConfigError("trials must be >= 100, got %d" % trials)
    resolved = ExperimentSpec(figure_id=fig, trials=trials,
                              master_seed=spec.master_seed, params=params)
    table = _RUNNERS[fig](resolved, params)
    table.meta = {"figure": fig, "name": FIGURES[fig], "trials": trials,
                  "master_seed": spec.master_seed, "params": _meta_params(params)}
    return table


def _meta_params(params):
    return {k: v for k, v in params.items() if v is not None}
