import logging
import math
import sys
import time
from pathlib import Path
from typing import Annotated, Any, Optional

import click
import numpy as np
import typer

from src.chain.oscillator import HarmonicOracle
from src.chain.schemas import ChainSpec
from src.chain.service import JosephsonChain
from src.checks.registry import CHECKS, run_checks
from src.coherent.fock import FockOracle
from src.coherent.pegg_barnett import PeggBarnett
from src.coherent.phase_lock import PhaseLock
from src.coherent.schemas import BosonEnsemble
from src.coherent.service import CoherentAlgebra
from src.const import (
    ETA_MEAN_RANGE,
    EXIT_BAD_CONFIG,
    EXIT_CHECK_FAILED,
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    FOCK_MAX_MODES,
)
from src.core.exceptions import ConfigError, CrossoverError
from src.core.service import CoreModel
from src.diagram.service import PhaseDiagram
from src.gap.oracles import DenseGridOracle
from src.gap.solver import GapSolver
from src.output import write_csv, write_meta
from src.run_config import RunConfig, build_run_config

log = logging.getLogger(__name__)

app = typer.Typer(add_completion=False, help="Кроссовер БКШ-БЭК: уравнения щели, когерентность, цепочки Джозефсона")

Units = Annotated[Optional[str], typer.Option("--units", help="dimensionless | physical")]
Out = Annotated[Optional[Path], typer.Option("--out", help="Каталог для CSV и метаданных")]
ConfigFile = Annotated[Optional[Path], typer.Option("--config", help="Файл key = value")]
Seed = Annotated[Optional[int], typer.Option("--seed", help="Зерно для вариационного спуска")]
TolGap = Annotated[Optional[float], typer.Option("--tol-gap", help="Допуск уравнения щели")]
TolNumber = Annotated[Optional[float], typer.Option("--tol-number", help="Допуск уравнения числа частиц")]
Verbose = Annotated[bool, typer.Option("--verbose", "-v", help="Подробный вывод")]
Points = Annotated[Optional[int], typer.Option("--points", help="Число точек по U/U_c")]
UMin = Annotated[Optional[float], typer.Option("--u-min", help="Нижняя граница U/U_c")]
UMax = Annotated[Optional[float], typer.Option("--u-max", help="Верхняя граница U/U_c")]


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _config(command: str, config_file: Path | None, verbose: bool, **flags: Any) -> RunConfig:
    _setup_logging(verbose)
    try:
        return build_run_config(command, config_file, flags)
    except ConfigError as e:
        typer.secho(f"Ошибка конфигурации: {e}", fg=typer.colors.RED, err=True)
        raise typer.Exit(EXIT_BAD_CONFIG)


def _finish(
    cfg: RunConfig,
    name: str,
    hashes: dict[str, str],
    started: float,
    failed: int = 0,
    extra: dict[str, Any] | None = None,
) -> None:
    meta = write_meta(
        cfg.out,
        name,
        config=cfg.model_dump(mode="json"),
        hashes=hashes,
        wall_clock=time.perf_counter() - started,
        extra=extra,
    )
    for file in hashes:
        typer.echo(f"wrote {cfg.out / file}")
    typer.echo(f"wrote {meta}")
    if failed:
        typer.secho(f"{failed} point(s) did not converge", fg=typer.colors.RED, err=True)
        raise typer.Exit(EXIT_NOT_CONVERGED)


def _solution_row(solution) -> dict[str, Any]:
    return {
        "U_over_Uc": solution.U_over_Uc,
        "mu_over_epsF": solution.mu_over_epsF,
        "Delta0_over_epsF": solution.Delta0_over_epsF,
        "Delta0_over_eps0": solution.Delta0_over_eps0,
        "residual_gap": solution.residual_gap,
        "residual_number": solution.residual_number,
        "converged": solution.converged,
    }


def _mu_zero(cfg: RunConfig, solutions) -> float | None:
    for left, right in zip(solutions[:-1], solutions[1:]):
        if left.converged and right.converged and left.mu > 0 >= right.mu:
            params = cfg.params()
            return GapSolver.locate_mu_zero(
                left.U_over_Uc, right.U_over_Uc, params.n, cfg.quadrature(), params, cfg.solver(), xtol=1e-9
            )
    return None


@app.command("gap-sweep")
def gap_sweep(
    units: Units = None,
    out: Out = None,
    config: ConfigFile = None,
    seed: Seed = None,
    tol_gap: TolGap = None,
    tol_number: TolNumber = None,
    points: Points = None,
    u_min: UMin = None,
    u_max: UMax = None,
    density: Annotated[Optional[float], typer.Option("--density", help="Плотность в единицах k0^3")] = None,
    verbose: Verbose = False,
):
    """Решение уравнений щели и числа частиц вдоль сетки U/U_c."""
    cfg = _config(
        "gap-sweep", config, verbose, units=units, out=out, seed=seed, tol_gap=tol_gap,
        tol_number=tol_number, points=points, u_min=u_min, u_max=u_max, density=density,
    )
    started = time.perf_counter()
    params = cfg.params()
    Uc = CoreModel.critical_coupling(params)
    solutions = GapSolver.sweep_coupling(cfg.U_ratios * Uc, params.n, cfg.quadrature(), params, cfg.solver())
    fields = list(_solution_row(solutions[0]))
    digest = write_csv(cfg.out / "gap_sweep.csv", fields, [_solution_row(s) for s in solutions])
    try:
        mu_zero = _mu_zero(cfg, solutions)
    except CrossoverError as e:
        log.warning("mu = 0 crossing not located: %s", e)
        mu_zero = None
    failed = sum(not s.converged for s in solutions)
    _finish(cfg, "gap_sweep", {"gap_sweep.csv": digest}, started, failed, {"mu_zero_U_over_Uc": mu_zero})


@app.command("bound-state")
def bound_state(
    units: Units = None,
    out: Out = None,
    config: ConfigFile = None,
    seed: Seed = None,
    tol_gap: TolGap = None,
    tol_number: TolNumber = None,
    points: Points = None,
    u_min: UMin = None,
    u_max: UMax = None,
    verbose: Verbose = False,
):
    """Энергия связанного состояния двух частиц в вакууме."""
    cfg = _config(
        "bound-state", config, verbose, units=units, out=out, seed=seed, tol_gap=tol_gap,
        tol_number=tol_number, points=points, u_min=u_min, u_max=u_max,
    )
    started = time.perf_counter()
    params = cfg.params()
    Uc = CoreModel.critical_coupling(params)
    quad = cfg.quadrature()
    rows = []
    for ratio in cfg.U_ratios:
        binding = GapSolver.bound_state_energy(ratio * Uc, quad, params)
        closed = GapSolver.bound_state_energy_closed_form(ratio * Uc, params)
        rows.append(
            {
                "U_over_Uc": ratio,
                "E_b_over_eps0": math.nan if binding is None else binding / params.eps0,
                "E_b_closed_over_eps0": math.nan if closed is None else closed / params.eps0,
                "bound": binding is not None and binding > 0,
            }
        )
    fields = ["U_over_Uc", "E_b_over_eps0", "E_b_closed_over_eps0", "bound"]
    digest = write_csv(cfg.out / "bound_state.csv", fields, rows)
    _finish(cfg, "bound_state", {"bound_state.csv": digest}, started, extra={"Uc": Uc})


@app.command("phase-diagram")
def phase_diagram(
    units: Units = None,
    out: Out = None,
    config: ConfigFile = None,
    seed: Seed = None,
    tol_gap: TolGap = None,
    tol_number: TolNumber = None,
    points: Points = None,
    u_min: UMin = None,
    u_max: UMax = None,
    e_c: Annotated[Optional[float], typer.Option("--e-c", help="Зарядовая энергия: мкэВ при --units physical, единицы eps0 при dimensionless")] = None,
    g_min: Annotated[Optional[float], typer.Option("--g-min", help="Минимальный G")] = None,
    g_max: Annotated[Optional[float], typer.Option("--g-max", help="Максимальный G")] = None,
    g_points: Annotated[Optional[int], typer.Option("--g-points", help="Число точек по G")] = None,
    mu_points: Annotated[Optional[int], typer.Option("--mu-points", help="Равномерная сетка по mu (0 - не строить)")] = None,
    verbose: Verbose = False,
):
    """Диаграмма режимов (BCS/BEC x global/local) и граница G*(mu)."""
    cfg = _config(
        "phase-diagram", config, verbose, units=units, out=out, seed=seed, tol_gap=tol_gap,
        tol_number=tol_number, points=points, u_min=u_min, u_max=u_max,
        e_c_values=None if e_c is None else [e_c], g_min=g_min, g_max=g_max, g_points=g_points,
        mu_points=mu_points,
    )
    started = time.perf_counter()
    params = cfg.params()
    Uc = CoreModel.critical_coupling(params)
    U_grid = cfg.U_ratios * Uc
    cache = PhaseDiagram.solve_grid(U_grid, params.n, cfg.quadrature(), params, cfg.solver())
    solutions = list(cache.values())
    cells = PhaseDiagram.sweep_diagram(
        U_grid, cfg.e_c_values, cfg.G_grid, params.n, cfg.quadrature(), params, cfg.solver(), cache=cache
    )
    rows = [
        {
            **cell.model_dump(exclude={"label", "error", "tol_gap", "tol_number", "n", "U"}),
            "pairing": cell.label.pairing if cell.label else "",
            "coherence": cell.label.coherence if cell.label else "",
        }
        for cell in cells
    ]
    fields = [
        "U_over_Uc", "mu", "mu_over_epsF", "Delta0", "gap_energy", "E_c", "G",
        "E_J", "sigma2", "pairing", "coherence", "converged",
    ]
    hashes = {"phase_diagram.csv": write_csv(cfg.out / "phase_diagram.csv", fields, rows)}

    boundary = [
        point.model_dump()
        for E_c in cfg.e_c_values
        for point in PhaseDiagram.boundary_curve(solutions, E_c, params)
    ]
    boundary_fields = ["U_over_Uc", "mu", "mu_over_epsF", "E_c", "G_closed_form", "G_bisection", "E_J_over_2E_c"]
    hashes["boundary.csv"] = write_csv(cfg.out / "boundary.csv", boundary_fields, boundary)

    if cfg.mu_points:
        good = [s for s in solutions if s.converged]
        mus = [s.mu for s in good]
        if len(good) >= 2:
            grid = np.linspace(min(mus), max(mus), cfg.mu_points)
            axis = PhaseDiagram.to_mu_axis(good, grid, params)
            mu_rows = [dict(zip(axis, values)) for values in zip(*axis.values())]
            hashes["mu_axis.csv"] = write_csv(cfg.out / "mu_axis.csv", list(axis), mu_rows)
    failed = sum(not s.converged for s in solutions)
    _finish(cfg, "phase_diagram", hashes, started, failed)


@app.command("overlap")
def overlap(
    out: Out = None,
    config: ConfigFile = None,
    modes: Annotated[Optional[int], typer.Option("--modes", help="Максимальное число мод")] = None,
    theta: Annotated[Optional[float], typer.Option("--theta", help="Угол theta для всех мод")] = None,
    dphi: Annotated[Optional[float], typer.Option("--dphi", help="Сдвиг фазы")] = None,
    alpha: Annotated[Optional[float], typer.Option("--alpha", help="Амплитуда бозонной моды")] = None,
    verbose: Verbose = False,
):
    """Перекрытия когерентных состояний в зависимости от числа мод."""
    cfg = _config("overlap", config, verbose, out=out, modes=modes, theta=theta, dphi=dphi, alpha=alpha)
    started = time.perf_counter()
    rows = []
    for M in range(1, cfg.modes + 1):
        bcs = CoherentAlgebra.bcs_overlap([cfg.theta] * M, cfg.dphi)
        bec = CoherentAlgebra.bec_overlap(BosonEnsemble.from_amplitudes([cfg.alpha] * M), cfg.dphi)
        product = CoherentAlgebra.multimode_product_overlap([cfg.alpha**2] * M, cfg.dphi)
        rows.append(
            {
                "M": M,
                "bcs_re": bcs.real,
                "bcs_im": bcs.imag,
                "bcs_abs": abs(bcs),
                "bcs_rate": -math.log(abs(bcs)) / M if abs(bcs) > 0 else math.inf,
                "bec_abs": abs(bec),
                "product_abs": abs(product),
            }
        )
    fields = ["M", "bcs_re", "bcs_im", "bcs_abs", "bcs_rate", "bec_abs", "product_abs"]
    digest = write_csv(cfg.out / "overlap.csv", fields, rows)
    _finish(cfg, "overlap", {"overlap.csv": digest}, started)


@app.command("eta")
def eta(
    units: Units = None,
    out: Out = None,
    config: ConfigFile = None,
    tol_gap: TolGap = None,
    tol_number: TolNumber = None,
    points: Points = None,
    u_min: UMin = None,
    u_max: UMax = None,
    k_points: Annotated[Optional[int], typer.Option("--k-points", help="Число парных мод в ансамбле")] = None,
    convention: Annotated[Optional[str], typer.Option("--convention", help="half_angle | literal")] = None,
    verbose: Verbose = False,
):
    """Статистика оператора eta для решённых точек и сверка с оракулом Фока."""
    cfg = _config(
        "eta", config, verbose, units=units, out=out, tol_gap=tol_gap, tol_number=tol_number,
        points=points, u_min=u_min, u_max=u_max, k_points=k_points, convention=convention,
    )
    started = time.perf_counter()
    params = cfg.params()
    Uc = CoreModel.critical_coupling(params)
    solutions = GapSolver.sweep_coupling(cfg.U_ratios * Uc, params.n, cfg.quadrature(), params, cfg.solver())
    k_grid = params.k_fermi * np.linspace(0.5, 1.5, cfg.k_points)
    rows = []
    for solution in solutions:
        row: dict[str, Any] = {"U_over_Uc": solution.U_over_Uc, "mu_over_epsF": solution.mu_over_epsF}
        if solution.converged and solution.Delta0 > 0:
            ens = CoherentAlgebra.pair_ensemble_from_solution(solution, k_grid, params, convention=cfg.convention)
            stats = CoherentAlgebra.eta_statistics(ens)
            row.update(Omega=ens.Omega, eta_mean=stats.mean, eta_variance=stats.variance)
            if len(ens.modes) <= FOCK_MAX_MODES:
                mean, variance = FockOracle.from_ensemble(ens).eta_moments(ens.phi)
                row.update(oracle_mean=mean, oracle_variance=variance)
        rows.append(row)
    fields = ["U_over_Uc", "mu_over_epsF", "Omega", "eta_mean", "eta_variance", "oracle_mean", "oracle_variance"]
    digest = write_csv(cfg.out / "eta.csv", fields, rows)
    failed = sum(not s.converged for s in solutions)
    _finish(
        cfg,
        "eta",
        {"eta.csv": digest},
        started,
        failed,
        {"angle_convention": cfg.convention.value, "eta_mean_range": list(ETA_MEAN_RANGE)},
    )


@app.command("oracle")
def oracle(
    units: Units = None,
    out: Out = None,
    config: ConfigFile = None,
    tol_gap: TolGap = None,
    tol_number: TolNumber = None,
    oracle_points: Annotated[Optional[int], typer.Option("--oracle-points", help="Число узлов плотной сетки")] = None,
    verbose: Verbose = False,
):
    """Сверка решателя с независимым оракулом на плотной сетке."""
    cfg = _config(
        "oracle", config, verbose, units=units, out=out, tol_gap=tol_gap, tol_number=tol_number,
        oracle_points=oracle_points,
    )
    started = time.perf_counter()
    params = cfg.params()
    Uc = CoreModel.critical_coupling(params)
    dense = DenseGridOracle(params, cfg.oracle_points)
    rows = []
    failed = 0
    for ratio in cfg.oracle_u:
        U = ratio * Uc
        row: dict[str, Any] = {"U_over_Uc": ratio}
        try:
            solution = GapSolver.solve_self_consistent(U, params.n, cfg.quadrature(), params, cfg.solver())
        except CrossoverError as e:
            log.warning("Solver failed at U/Uc=%.6g: %s", ratio, e)
            failed += 1
            rows.append(row)
            continue
        mu, Delta0 = dense.solve(U, params.n)
        binding = GapSolver.bound_state_energy(U, cfg.quadrature(), params)
        dense_binding = dense.bound_state_energy(U)
        closed = GapSolver.bound_state_energy_closed_form(U, params)
        row.update(
            mu_solver=solution.mu,
            mu_oracle=mu,
            Delta0_solver=solution.Delta0,
            Delta0_oracle=Delta0,
            mu_rel_diff=abs(solution.mu - mu) / abs(mu) if mu else math.nan,
            Delta0_rel_diff=abs(solution.Delta0 - Delta0) / Delta0 if Delta0 else math.nan,
            E_b_solver=math.nan if binding is None else binding,
            E_b_oracle=math.nan if dense_binding is None else dense_binding,
            E_b_closed=math.nan if closed is None else closed,
        )
        rows.append(row)
    fields = [
        "U_over_Uc", "mu_solver", "mu_oracle", "Delta0_solver", "Delta0_oracle",
        "mu_rel_diff", "Delta0_rel_diff", "E_b_solver", "E_b_oracle", "E_b_closed",
    ]
    digest = write_csv(cfg.out / "oracle.csv", fields, rows)
    _finish(cfg, "oracle", {"oracle.csv": digest}, started, failed)


@app.command("pegg-barnett")
def pegg_barnett(
    out: Out = None,
    config: ConfigFile = None,
    omega: Annotated[Optional[float], typer.Option("--omega", help="Среднее число заполнения")] = None,
    verbose: Verbose = False,
):
    """Коммутатор фазы Пегга-Барнетта и числа частиц на лестнице s."""
    cfg = _config("pegg-barnett", config, verbose, out=out, omega=omega)
    started = time.perf_counter()
    rows = []
    for s in cfg.s_values:
        report = PeggBarnett.commutator_report(s, cfg.omega)
        junction = PeggBarnett.junction_commutator(s, cfg.omega, cfg.omega)
        rows.append(
            {
                "s": s,
                "Omega": cfg.omega,
                "commutator_re": report.value.real,
                "commutator_im": report.value.imag,
                "deviation": report.deviation,
                "truncation_error": report.truncation_error,
                "truncation_warning": report.truncation_warning,
                "junction_re": junction.real,
                "junction_im": junction.imag,
            }
        )
    fields = list(rows[0])
    digest = write_csv(cfg.out / "pegg_barnett.csv", fields, rows)
    _finish(cfg, "pegg_barnett", {"pegg_barnett.csv": digest}, started)


@app.command("chain")
def chain(
    out: Out = None,
    config: ConfigFile = None,
    e_c: Annotated[Optional[float], typer.Option("--e-c", help="Зарядовая энергия")] = None,
    segments: Annotated[Optional[int], typer.Option("--segments", help="Число сегментов")] = None,
    verbose: Verbose = False,
):
    """Флуктуации фазы, ODLRO и классификация когерентности цепочки."""
    cfg = _config(
        "chain", config, verbose, out=out, e_c_values=None if e_c is None else [e_c], segments=segments,
    )
    started = time.perf_counter()
    E_c = cfg.e_c_values[0]
    Delta_bar = JosephsonChain.bar_delta(cfg.segment_u, cfg.segment_delta, cfg.segment_particles)
    rows = []
    for E_J in cfg.e_j_values:
        spec = ChainSpec(N=cfg.segments, E_c=E_c, E_J=E_J, Delta_bars=[Delta_bar] * cfg.segments)
        state = JosephsonChain.chain_ground_state(spec)
        oracle_result = HarmonicOracle.oscillator_oracle(E_c, E_J)
        rows.append(
            {
                "N": spec.N,
                "E_c": spec.E_c,
                "E_J": spec.E_J,
                "Delta_bar": Delta_bar,
                "sigma2": state.sigma2,
                "sigma2_oscillator": state.sigma2_oscillator,
                "sigma2_wavefunction": state.sigma2_wavefunction,
                "oracle_variance": oracle_result.variance,
                "oracle_order": oracle_result.convergence_order,
                "coherence": JosephsonChain.coherence_classify(spec.E_c, spec.E_J),
                "odlro_nearest": JosephsonChain.odlro(0, 1, spec.Delta_bars, state.sigma2),
                "odlro_end": JosephsonChain.odlro(0, spec.N - 1, spec.Delta_bars, state.sigma2),
                "odlro_slope": JosephsonChain.odlro_decay_slope(spec.Delta_bars, state.sigma2),
            }
        )
    fields = list(rows[0])
    digest = write_csv(cfg.out / "chain.csv", fields, rows)
    _finish(cfg, "chain", {"chain.csv": digest}, started, extra={"variance_discrepancy": True})


@app.command("phase-lock")
def phase_lock(
    out: Out = None,
    config: ConfigFile = None,
    seed: Seed = None,
    lock_modes: Annotated[Optional[int], typer.Option("--modes", help="Число мод ящика")] = None,
    g_sign: Annotated[Optional[int], typer.Option("--g-sign", help="Знак взаимодействия: -1 или 1")] = None,
    lock_runs: Annotated[Optional[int], typer.Option("--runs", help="Число запусков с зёрнами seed, seed+1, ...")] = None,
    verbose: Verbose = False,
):
    """Вариационная проверка фазовой синхронизации мод конденсата."""
    cfg = _config(
        "phase-lock", config, verbose, out=out, seed=seed, lock_modes=lock_modes, g_sign=g_sign,
        lock_runs=lock_runs,
    )
    started = time.perf_counter()
    rows = []
    for run in range(cfg.lock_runs):
        report = PhaseLock.variational_phase_lock(cfg.lock_modes, cfg.g_sign, cfg.seed + run)
        rows.append(report.model_dump(exclude={"phases", "amplitudes"}))
    fields = list(rows[0])
    digest = write_csv(cfg.out / "phase_lock.csv", fields, rows)
    _finish(cfg, "phase_lock", {"phase_lock.csv": digest}, started)


@app.command("checks")
def checks(
    out: Out = None,
    config: ConfigFile = None,
    only: Annotated[Optional[list[str]], typer.Option("--only", help="Запустить только эти проверки")] = None,
    pegg_barnett_s: Annotated[Optional[int], typer.Option("--pegg-barnett-s", help="Начальное s лестницы")] = None,
    list_only: Annotated[bool, typer.Option("--list", help="Показать список проверок")] = False,
    verbose: Verbose = False,
):
    """Набор оракульных проверок; код 0 только если все прошли."""
    if list_only:
        for name, (_, description) in CHECKS.items():
            typer.echo(f"{name}: {description}")
        raise typer.Exit(EXIT_OK)
    cfg = _config("checks", config, verbose, out=out, checks=only, pegg_barnett_s=pegg_barnett_s)
    started = time.perf_counter()
    try:
        results = run_checks(cfg.checks or None, cfg.pegg_barnett_s)
    except ConfigError as e:
        typer.secho(f"Ошибка конфигурации: {e}", fg=typer.colors.RED, err=True)
        raise typer.Exit(EXIT_BAD_CONFIG)
    for result in results:
        for warning in result.warnings:
            typer.secho(f"WARNING {result.name}: {warning}", fg=typer.colors.YELLOW)
        typer.secho(result.summary(), fg=typer.colors.GREEN if result.passed else typer.colors.RED)
    rows = [
        {
            "name": r.name,
            "passed": r.passed,
            "measured": ";".join(f"{k}={v!r}" for k, v in r.measured.items()),
            "detail": r.detail,
        }
        for r in results
    ]
    digest = write_csv(cfg.out / "checks.csv", ["name", "passed", "measured", "detail"], rows)
    _finish(cfg, "checks", {"checks.csv": digest}, started)
    if not all(r.passed for r in results):
        raise typer.Exit(EXIT_CHECK_FAILED)


def main():
    try:
        code = app(standalone_mode=False)
    except click.exceptions.UsageError as e:
        e.show()
        sys.exit(EXIT_BAD_CONFIG)
    except click.exceptions.Abort:
        sys.exit(EXIT_CHECK_FAILED)
    sys.exit(code or EXIT_OK)


if __name__ == "__main__":
    main()
