"""Experiment harness: figure presets, sweeps, ensemble averaging, tables.

Each sweep point simulates a block of symbols per (strategy, channel
realization) with vectorized kernels, estimates both observers' SNRs and
averages the clamped secrecy rate over the channel ensemble.  Random
streams derive from (base seed, role, strategy, axis index, ensemble
index) so results are reproducible and schedule-independent.

Noise floors are anchored per link-quality convention: the receiver's
noise power is set from its strategy's reference channel gain (strongest
path for the static beams, all-path mean for the randomized techniques)
so that the configured rho_R measures the quality of the link actually
used.  The eavesdropper carries unit channel gain and noise 1/rho_E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import (
    alignment_mixture_snr,
    db_to_linear,
    estimate_joint_moments,
    linear_to_db,
    location_mixture_snr,
    receiver_snr,
    secrecy_rate,
    snr_e_joint,
    snr_e_random_path,
    snr_r_joint,
    snr_r_random_path,
    SnrPair,
)
from .array_geometry import ArrayConfig
from .channel import ChannelRealization, channel_stats, sample_channel
from .signal_engine import COS_ALIGN_TOL
from .strategies import StrategyKind, StrategyParams, secondary_pool

AXES = ("theta_e_deg", "rho_e_db", "n_antennas", "n_paths")

LABEL_NONE, LABEL_MAIN, LABEL_SECONDARY = 0, 1, 2


@dataclass(frozen=True)
class SweepSpec:
    strategies: tuple[StrategyKind, ...]
    axis: str
    axis_values: tuple[float, ...]
    n_antennas: int = 32
    n_paths: int = 12
    m_main: int | None = None  # None -> N // 2
    l_s: int = 5
    rho_r_db: float = 10.0
    rho_e_db: float = 15.0
    theta_r_deg: float = 40.0
    theta_e_deg: float = 40.0
    spacing_over_wavelength: float = 0.5
    symbols_per_point: int = 10_000
    ensemble: int = 200
    base_seed: int = 0
    curve_param: str | None = None  # metadata for multi-curve figures
    curve_values: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.strategies:
            raise ValueError("strategy set must be nonempty")
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not self.axis_values:
            raise ValueError("axis values must be nonempty")
        if self.symbols_per_point < 100:
            raise ValueError("symbols_per_point must be >= 100")
        if self.ensemble < 1:
            raise ValueError("ensemble must be >= 1")

    def resolved_m(self, n_antennas: int) -> int:
        return self.m_main if self.m_main is not None else n_antennas // 2


@dataclass(frozen=True)
class SweepRow:
    strategy: StrategyKind
    axis: str
    axis_value: float
    snr_r_db: float | None
    snr_e_db: float | None
    rate_bps_hz: float | None
    stderr: float | None
    status: str  # "ok" | "inapplicable"


@dataclass
class ResultTable:
    rows: list[SweepRow]
    spec: SweepSpec

    CSV_HEADER = "strategy,axis,axis_value,snr_r_db,snr_e_db,secrecy_rate_bps_hz,stderr,status"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            fields = [
                r.strategy.value,
                r.axis,
                f"{r.axis_value:g}",
                "" if r.snr_r_db is None else f"{r.snr_r_db:.6f}",
                "" if r.snr_e_db is None else f"{r.snr_e_db:.6f}",
                "" if r.rate_bps_hz is None else f"{r.rate_bps_hz:.6f}",
                "" if r.stderr is None else f"{r.stderr:.6f}",
                r.status,
            ]
            lines.append(",".join(fields))
        return "\n".join(lines) + "\n"


def figure_preset(fig_id: int) -> SweepSpec:
    """Preset sweeps matching the benchmark figure setups.

    1: secrecy vs eavesdropper angle, N=32, path-count curves {4, 8, 12}.
    2: secrecy vs eavesdropper angle, L=12, antenna-count curves {16, 32, 64}.
    3: secrecy vs rho_E at theta_E = 40 deg (on the main path), N=32, L=12.
    4: secrecy vs rho_E at theta_E = 55 deg (off the main path), N=32, L=12.
    """
    all_strats = (
        StrategyKind.CONVENTIONAL,
        StrategyKind.SWITCHED_ARRAY,
        StrategyKind.RANDOM_PATH,
        StrategyKind.JOINT_PATH_ANTENNA,
    )
    theta_axis = tuple(float(t) for t in range(1, 181))
    rho_axis = tuple(float(r) for r in np.arange(0.0, 20.01, 2.5))
    if fig_id == 1:
        return SweepSpec(
            strategies=all_strats,
            axis="theta_e_deg",
            axis_values=theta_axis,
            n_antennas=32,
            n_paths=12,
            curve_param="n_paths",
            curve_values=(4.0, 8.0, 12.0),
        )
    if fig_id == 2:
        return SweepSpec(
            strategies=all_strats,
            axis="theta_e_deg",
            axis_values=theta_axis,
            n_paths=12,
            curve_param="n_antennas",
            curve_values=(16.0, 32.0, 64.0),
        )
    if fig_id == 3:
        return SweepSpec(
            strategies=all_strats,
            axis="rho_e_db",
            axis_values=rho_axis,
            theta_e_deg=40.0,
        )
    if fig_id == 4:
        return SweepSpec(
            strategies=all_strats,
            axis="rho_e_db",
            axis_values=rho_axis,
            theta_e_deg=55.0,
        )
    raise ValueError(f"unknown figure id {fig_id}; expected 1-4")


# ---------------------------------------------------------------------------
# vectorized symbol-block kernels


def _centered(n: int) -> np.ndarray:
    return (n - 1) / 2.0 - np.arange(n)


def _phase_diff(theta_x_deg, theta_e_deg, dow):
    """gamma(theta_x, theta_e) = 2 pi (d/lambda) (cos x - cos e)."""
    return (
        2.0
        * np.pi
        * dow
        * (np.cos(np.deg2rad(theta_x_deg)) - np.cos(np.deg2rad(theta_e_deg)))
    )


def _aligned(theta_a_deg, theta_b_deg) -> bool:
    return abs(np.cos(np.deg2rad(theta_a_deg)) - np.cos(np.deg2rad(theta_b_deg))) < COS_ALIGN_TOL


def _random_subsets(rng, K, n, m) -> np.ndarray:
    """K uniformly random m-subsets of range(n) as a boolean (K, n) mask."""
    order = np.argsort(rng.random((K, n)), axis=1)
    mask = np.zeros((K, n), dtype=bool)
    np.put_along_axis(mask, order[:, :m], True, axis=1)
    return mask


@dataclass
class SymbolStreams:
    """Vectorized per-symbol gains for one (channel, strategy) block.

    recv holds the receiver's schedule-known coherent gains (K,); eaves
    holds the eavesdropper gains for each requested observation angle
    (T, K); labels marks per-symbol alignment events per angle (T, K).
    """

    recv: np.ndarray
    eaves: np.ndarray
    labels: np.ndarray


def simulate_streams(
    ch: ChannelRealization,
    cfg: ArrayConfig,
    kind: StrategyKind,
    m_main: int,
    l_s: int,
    theta_e_list,
    K: int,
    rng: np.random.Generator,
) -> SymbolStreams:
    """Simulate K symbols of one strategy against many observation angles.

    Equivalent to per-symbol plan generation plus the scalar gain
    operations, restructured around array arithmetic.  The eavesdropper
    carries unit channel gain.
    """
    n = cfg.n_antennas
    L = ch.n_paths
    dow = cfg.spacing_over_wavelength
    thetas = np.atleast_1d(np.asarray(theta_e_list, dtype=float))
    T = thetas.size
    c = _centered(n)
    gains = ch.gains
    alpha_s = gains[ch.strongest_index]
    theta_s = ch.strongest_aod_deg
    root_nl = math.sqrt(n / L)

    if kind is StrategyKind.CONVENTIONAL:
        recv = np.full(K, np.conj(alpha_s) * root_nl, dtype=complex)
        eaves = np.empty((T, K), dtype=complex)
        labels = np.zeros((T, K), dtype=np.int8)
        for t, th in enumerate(thetas):
            coupling = np.exp(1j * c * _phase_diff(theta_s, th, dow)).sum() / n
            eaves[t] = root_nl * coupling
            if _aligned(th, theta_s):
                labels[t] = LABEL_MAIN
        return SymbolStreams(recv, eaves, labels)

    if kind is StrategyKind.SWITCHED_ARRAY:
        m = m_main
        mask = _random_subsets(rng, K, n, m)
        recv = np.full(K, np.conj(alpha_s) * root_nl * math.sqrt(m / n), dtype=complex)
        eaves = np.empty((T, K), dtype=complex)
        labels = np.zeros((T, K), dtype=np.int8)
        for t, th in enumerate(thetas):
            v = np.exp(1j * c * _phase_diff(theta_s, th, dow)) / math.sqrt(n * m)
            eaves[t] = root_nl * (mask @ v)
            if _aligned(th, theta_s):
                labels[t] = LABEL_MAIN
        return SymbolStreams(recv, eaves, labels)

    if kind is StrategyKind.RANDOM_PATH:
        li = rng.integers(L, size=K)
        recv = np.conj(gains[li]) * root_nl
        # per (angle, path) coupling B / sqrt(LN)
        aods = ch.aods_deg
        bmat = np.empty((T, L))
        amat = np.zeros((T, L), dtype=bool)
        for t, th in enumerate(thetas):
            for l, tl in enumerate(aods):
                if _aligned(th, tl):
                    bmat[t, l] = n
                    amat[t, l] = True
                else:
                    bmat[t, l] = np.exp(
                        -1j * c * _phase_diff(th, tl, dow)
                    ).sum().real
        eaves = (bmat[:, li] / math.sqrt(L * n)).astype(complex)
        labels = np.where(amat[:, li], LABEL_MAIN, LABEL_NONE).astype(np.int8)
        return SymbolStreams(recv, eaves, labels)

    if kind is StrategyKind.JOINT_PATH_ANTENNA:
        if L < 2:
            raise ValueError("joint strategy requires L >= 2 paths")
        params = StrategyParams(m_main=m_main, l_s=l_s)
        params.validate(n, L)
        pool = np.array(secondary_pool(ch, l_s), dtype=int)
        pidx = rng.integers(pool.size, size=K)  # index into pool, per symbol
        sec_paths = pool[pidx]
        mask_m = _random_subsets(rng, K, n, m_main)
        mask_l = ~mask_m
        m = m_main
        scale = 1.0 / math.sqrt(L * n)

        pool_aods = ch.aods_deg[pool]
        # receiver cross-beam sums per pool angle
        e_is = np.exp(
            1j * np.outer(c, _phase_diff(pool_aods, theta_s, dow))
        )  # (n, P): secondary-vs-main phasors
        recv = np.empty(K, dtype=complex)
        eaves = np.empty((T, K), dtype=complex)
        labels = np.zeros((T, K), dtype=np.int8)
        alpha_i = gains[sec_paths]
        for p in range(pool.size):
            sel = pidx == p
            s1 = mask_l[sel] @ e_is[:, p]
            s2 = mask_m[sel] @ np.conj(e_is[:, p])
            beta_r = np.conj(alpha_s) * s1 + np.conj(alpha_i[sel]) * s2
            recv[sel] = scale * (
                np.conj(alpha_s) * m + np.conj(alpha_i[sel]) * (n - m) + beta_r
            )
        for t, th in enumerate(thetas):
            v_main = np.exp(1j * c * _phase_diff(theta_s, th, dow))
            part_main = mask_m @ v_main
            v_sec = np.exp(1j * np.outer(c, _phase_diff(pool_aods, th, dow)))  # (n, P)
            part_sec = np.empty(K, dtype=complex)
            for p in range(pool.size):
                sel = pidx == p
                part_sec[sel] = mask_l[sel] @ v_sec[:, p]
            eaves[t] = scale * (part_main + part_sec)
            if _aligned(th, theta_s):
                labels[t] = LABEL_MAIN
            else:
                for p in range(pool.size):
                    if _aligned(th, pool_aods[p]):
                        labels[t, pidx == p] = LABEL_SECONDARY
        return SymbolStreams(recv, eaves, labels)

    raise ValueError(f"unknown strategy {kind}")


# ---------------------------------------------------------------------------
# sweep driver


def receiver_reference_gain(ch: ChannelRealization, kind: StrategyKind) -> float:
    """Reference channel gain anchoring the receiver's noise floor.

    The static beams ride the strongest path, so rho_R measures that
    link; the randomized techniques spread over the path set, so rho_R
    measures the all-path mean gain as in the path-hopping SNR formula.
    """
    if kind in (StrategyKind.CONVENTIONAL, StrategyKind.SWITCHED_ARRAY):
        return abs(ch.paths[ch.strongest_index].gain)
    return channel_stats(ch).mean_gain


def _joint_covered(ch: ChannelRealization, l_s: int, theta_e_deg: float) -> bool:
    """True if theta_e coincides with one of the joint scheme's transmit angles."""
    angles = [ch.strongest_aod_deg] + [
        ch.paths[i].aod_deg for i in secondary_pool(ch, l_s)
    ]
    return any(_aligned(theta_e_deg, a) for a in angles)


def _joint_sidelobe_aods(ch: ChannelRealization, l_s: int) -> list[float]:
    """Path angles the joint scheme never steers at (eavesdropper sidelobe spots)."""
    pool = set(secondary_pool(ch, l_s))
    return [
        p.aod_deg
        for i, p in enumerate(ch.paths)
        if i != ch.strongest_index and i not in pool
    ]


def _channel_rng(spec: SweepSpec, n_paths: int, ens: int) -> np.random.Generator:
    # axis-independent for N / theta / rho axes so ensemble members pair up
    ss = np.random.SeedSequence([spec.base_seed, 0xC0FFEE, n_paths, ens])
    return np.random.default_rng(ss)


def _plan_rng(spec: SweepSpec, strat: StrategyKind, axis_idx: int, ens: int) -> np.random.Generator:
    ss = np.random.SeedSequence(
        [spec.base_seed, 0xBEEF, list(StrategyKind).index(strat), axis_idx, ens]
    )
    return np.random.default_rng(ss)


def _resolve_point(spec: SweepSpec, value: float) -> dict:
    p = {
        "n_antennas": spec.n_antennas,
        "n_paths": spec.n_paths,
        "theta_e_deg": spec.theta_e_deg,
        "rho_e_db": spec.rho_e_db,
    }
    if spec.axis == "n_antennas":
        p["n_antennas"] = int(value)
    elif spec.axis == "n_paths":
        p["n_paths"] = int(value)
    elif spec.axis == "theta_e_deg":
        p["theta_e_deg"] = float(value)
    else:
        p["rho_e_db"] = float(value)
    return p


def _strategy_applicable(kind: StrategyKind, spec: SweepSpec, n_antennas: int, n_paths: int):
    if kind is StrategyKind.JOINT_PATH_ANTENNA:
        if n_paths < 2:
            return False
        try:
            StrategyParams(spec.resolved_m(n_antennas), min(spec.l_s, n_paths)).validate(
                n_antennas, n_paths
            )
        except ValueError:
            return False
    return True


def run_sweep(spec: SweepSpec) -> ResultTable:
    """Monte-Carlo evaluation of every (strategy, axis value) sweep point.

    For each point the clamped secrecy rate is averaged over the channel
    ensemble; rows carry the ensemble means (SNRs in dB) and the standard
    error of the rate.  Infeasible combinations yield rows flagged
    inapplicable.
    """
    rows = []
    rho_r = db_to_linear(spec.rho_r_db)
    for strat in spec.strategies:
        for axis_idx, value in enumerate(spec.axis_values):
            p = _resolve_point(spec, value)
            n_ant, n_pth = p["n_antennas"], p["n_paths"]
            if not _strategy_applicable(strat, spec, n_ant, n_pth):
                rows.append(
                    SweepRow(strat, spec.axis, float(value), None, None, None, None, "inapplicable")
                )
                continue
            cfg = ArrayConfig(n_ant, spec.spacing_over_wavelength)
            rho_e = db_to_linear(p["rho_e_db"])
            m_main = spec.resolved_m(n_ant)
            l_s = min(spec.l_s, n_pth)
            rates = np.empty(spec.ensemble)
            snr_r_acc = np.empty(spec.ensemble)
            snr_e_acc = np.empty(spec.ensemble)
            for ens in range(spec.ensemble):
                ch = sample_channel(n_pth, spec.theta_r_deg, _channel_rng(spec, n_pth, ens))
                theta_e = p["theta_e_deg"]
                # Under the pessimistic random-location model, an eavesdropper
                # sitting on a transmit angle of the joint scheme mixes mainlobe
                # interception (probability 2/L) with sidelobe observation at
                # the non-transmitted path angles; those angles get their own
                # simulated gain streams.
                joint_mix = strat is StrategyKind.JOINT_PATH_ANTENNA and _joint_covered(
                    ch, l_s, theta_e
                )
                theta_list = [theta_e]
                if joint_mix:
                    theta_list += _joint_sidelobe_aods(ch, l_s)
                streams = simulate_streams(
                    ch,
                    cfg,
                    strat,
                    m_main,
                    l_s,
                    theta_list,
                    spec.symbols_per_point,
                    _plan_rng(spec, strat, axis_idx, ens),
                )
                sigma_r = receiver_reference_gain(ch, strat) ** 2 / rho_r
                snr_r = receiver_snr(streams.recv, sigma_r)
                if joint_mix:
                    aligned = streams.labels[0] != LABEL_NONE
                    snr_e = location_mixture_snr(
                        streams.eaves[0][aligned],
                        list(streams.eaves[1:]),
                        n_pth,
                        1.0 / rho_e,
                    )
                else:
                    snr_e = alignment_mixture_snr(
                        streams.eaves[0], streams.labels[0], 1.0 / rho_e
                    )
                rates[ens] = secrecy_rate(SnrPair(snr_r, snr_e))
                snr_r_acc[ens] = snr_r
                snr_e_acc[ens] = snr_e
            stderr = (
                float(rates.std(ddof=1) / math.sqrt(spec.ensemble))
                if spec.ensemble > 1
                else 0.0
            )
            rows.append(
                SweepRow(
                    strat,
                    spec.axis,
                    float(value),
                    linear_to_db(float(snr_r_acc.mean())),
                    linear_to_db(float(snr_e_acc.mean())),
                    float(rates.mean()),
                    stderr,
                    "ok",
                )
            )
    rows.sort(key=lambda r: (r.strategy.value, r.axis_value))
    return ResultTable(rows=rows, spec=spec)


def compare_analytic(spec: SweepSpec, moment_draws: int = 4000) -> ResultTable:
    """Closed-form rates on the same grid, ensemble-averaged over channels.

    Supports the two randomized techniques only; the beta moments of the
    joint technique are estimated over subset draws per channel.
    """
    supported = (StrategyKind.RANDOM_PATH, StrategyKind.JOINT_PATH_ANTENNA)
    for strat in spec.strategies:
        if strat not in supported:
            raise ValueError(f"compare_analytic supports {supported}, got {strat}")
    rows = []
    rho_r = db_to_linear(spec.rho_r_db)
    for strat in spec.strategies:
        for axis_idx, value in enumerate(spec.axis_values):
            p = _resolve_point(spec, value)
            n_ant, n_pth = p["n_antennas"], p["n_paths"]
            if not _strategy_applicable(strat, spec, n_ant, n_pth):
                rows.append(
                    SweepRow(strat, spec.axis, float(value), None, None, None, None, "inapplicable")
                )
                continue
            cfg = ArrayConfig(n_ant, spec.spacing_over_wavelength)
            rho_e = db_to_linear(p["rho_e_db"])
            m_main = spec.resolved_m(n_ant)
            l_s = min(spec.l_s, n_pth)
            rates = np.empty(spec.ensemble)
            snr_r_acc = np.empty(spec.ensemble)
            snr_e_acc = np.empty(spec.ensemble)
            for ens in range(spec.ensemble):
                ch = sample_channel(n_pth, spec.theta_r_deg, _channel_rng(spec, n_pth, ens))
                if strat is StrategyKind.RANDOM_PATH:
                    snr_r = snr_r_random_path(n_ant, n_pth, rho_r)
                    snr_e = snr_e_random_path(
                        n_ant, n_pth, rho_e, p["theta_e_deg"], ch.aods_deg, cfg
                    )
                else:
                    stats = channel_stats(ch)
                    sigma_r = stats.mean_gain**2 / rho_r
                    params = StrategyParams(m_main, l_s)
                    moments = estimate_joint_moments(
                        ch,
                        cfg,
                        params,
                        p["theta_e_deg"],
                        _plan_rng(spec, strat, axis_idx, ens),
                        n_draws=moment_draws,
                    )
                    snr_r = snr_r_joint(
                        n_ant,
                        n_pth,
                        m_main,
                        abs(ch.paths[ch.strongest_index].gain),
                        stats.mean_gain_excl_strongest,
                        abs(moments.beta_r_mean) ** 2,
                        sigma_r,
                    )
                    snr_e = snr_e_joint(
                        n_ant,
                        n_pth,
                        m_main,
                        rho_e,
                        moments.beta_e_hat_mean_sq,
                        moments.beta_e_mean_sq,
                        moments.beta_e_var,
                    )
                rates[ens] = secrecy_rate(SnrPair(snr_r, snr_e))
                snr_r_acc[ens] = snr_r
                snr_e_acc[ens] = snr_e
            stderr = (
                float(rates.std(ddof=1) / math.sqrt(spec.ensemble))
                if spec.ensemble > 1
                else 0.0
            )
            rows.append(
                SweepRow(
                    strat,
                    spec.axis,
                    float(value),
                    linear_to_db(float(snr_r_acc.mean())),
                    linear_to_db(float(snr_e_acc.mean())),
                    float(rates.mean()),
                    stderr,
                    "ok",
                )
            )
    rows.sort(key=lambda r: (r.strategy.value, r.axis_value))
    return ResultTable(rows=rows, spec=spec)
