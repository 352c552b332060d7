from __future__ import annotations

import logging
from importlib import metadata
from typing import Callable, Dict

import numpy as np
import pandas as pd

from rmcorr.diagnostics import (
    batch_estimate,
    compute_w,
    laplace_cross_moment,
    laplace_fourth_moment,
    moment_estimates,
    residual_from_replicates,
    run_replicates,
)
from rmcorr.ensemble import generate
from rmcorr.limit_laws import MPLaw, default_grid, lsd_density_on_grid, mp_tables
from rmcorr.population import build_model, esd_of_T, validate_assumptions

from .config import ExperimentConfig, ExperimentKind, check_preconditions
from .qq import qq_experiment
from .writer import ArtifactWriter

MANIFEST_VERSION = 1
STREAM_DERIVATION = (
    "Replicate r of the j-th distribution at the i-th (p, n) pair draws from "
    "Generator(Philox(SeedSequence([seed, i * len(distributions) + j, r]))); "
    "the qq experiment uses the same rule with its two distributions."
)


def library_version() -> str:
    try:
        return metadata.version("rmcorr-py")
    except metadata.PackageNotFoundError:
        return "unknown"


def _stream(config: ExperimentConfig, size_index: int, dist_index: int) -> int:
    return size_index * len(config.distributions) + dist_index


def _simulate(config: ExperimentConfig, writer: ArtifactWriter):
    for i, (p, n) in enumerate(config.size_list):
        model = build_model(config.model.mode, p, config.model.coeffs)
        for j, spec in enumerate(config.specs):
            stream = _stream(config, i, j)

            def one(r):
                return generate(model, spec, n, config.seed, stream, r).spectrum()

            spectra = run_replicates(one, config.replicates, config.threads)
            eigs = pd.concat(
                [s.to_frame().assign(replicate=r) for r, s in enumerate(spectra)], ignore_index=True
            )[["replicate", "index", "eigenvalue"]]
            writer.add_frame(f"simulate_{p}x{n}_{spec.label}.csv", eigs)

            summary = dict(
                p=p,
                n=n,
                distribution=spec.to_dict(),
                replicates=config.replicates,
                mean_smallest=float(np.mean([s.smallest for s in spectra])),
                mean_largest=float(np.mean([s.largest for s in spectra])),
            )
            if model.is_identity:
                summary["ks_mp_first_replicate"] = spectra[0].ks_distance(MPLaw(p / n).cdf)
            writer.add_json(f"simulate_{p}x{n}_{spec.label}.json", summary)


def _mp(config: ExperimentConfig, writer: ArtifactWriter):
    if config.gamma is not None:
        targets = [(f"gamma{config.gamma:g}", config.gamma)]
    else:
        targets = [(f"{p}x{n}", p / n) for p, n in config.size_list]
    for tag, gamma in targets:
        density, cdf, quantile = mp_tables(gamma, config.grid_points, config.q_list)
        writer.add_frame(f"mp_{tag}_density.csv", density)
        writer.add_frame(f"mp_{tag}_cdf.csv", cdf)
        writer.add_frame(f"mp_{tag}_quantile.csv", quantile)


def _lsd(config: ExperimentConfig, writer: ArtifactWriter):
    tol = config.tolerances
    for p, n in config.size_list:
        model = build_model(config.model.mode, p, config.model.coeffs)
        h = esd_of_T(model)
        gamma = p / n
        grid = default_grid(gamma, h, config.grid_points)
        solution = lsd_density_on_grid(gamma, h, grid, tol.lsd_epsilon, **tol.solver_kwargs())
        logging.info(f"LSD p={p} n={n}: {len(h)} atoms, max iterations {solution.max_iterations}")
        writer.add_frame(f"lsd_{p}x{n}_density.csv", solution.to_frame())
        quantiles = solution.quantiles(config.q_list)
        writer.add_frame(f"lsd_{p}x{n}_quantile.csv", pd.DataFrame(dict(q=config.q_list, quantile=quantiles)))


def _diagnose(config: ExperimentConfig, writer: ArtifactWriter):
    z_grid = [complex(re, im) for re, im in config.z_grid]
    for i, (p, n) in enumerate(config.size_list):
        model = build_model(config.model.mode, p, config.model.coeffs)
        for j, spec in enumerate(config.specs):
            stream = _stream(config, i, j)

            def one(r):
                ens = generate(model, spec, n, config.seed, stream, r)
                spectrum = ens.spectrum()
                return [(compute_w(ens, z), spectrum.stieltjes(z)) for z in z_grid]

            per_rep = run_replicates(one, config.replicates, config.threads)
            rows = []
            for k, z in enumerate(z_grid):
                diags = [rep[k][0] for rep in per_rep]
                s_values = [rep[k][1] for rep in per_rep]
                abs_w = batch_estimate([abs(d.W_n) for d in diags], config.tolerances.batches)
                w1 = batch_estimate([d.W_n1 for d in diags], config.tolerances.batches)
                w_values = [d.W_n for d in diags]
                res = residual_from_replicates(p, n, z, s_values, w_values, batches=config.tolerances.batches)
                rows.append(
                    dict(
                        z_real=z.real,
                        z_imag=z.imag,
                        mean_abs_W=abs_w.mean,
                        mean_abs_W_stderr=abs_w.stderr,
                        mean_W1_real=w1.mean.real,
                        mean_W1_imag=w1.mean.imag,
                        mean_W1_stderr=w1.stderr,
                        bound_ok=all(d.bound_check for d in diags),
                        residual_real=res.residual.real,
                        residual_imag=res.residual.imag,
                        abs_residual=abs(res.residual),
                        residual_stderr=res.stderr,
                    )
                )
            writer.add_frame(f"diagnose_{p}x{n}_{spec.label}.csv", pd.DataFrame(rows))


def _qq(config: ExperimentConfig, writer: ArtifactWriter):
    report = qq_experiment(config)
    a, b = (spec.label for spec in config.specs)
    for table in report.tables:
        writer.add_frame(f"qq_{table.p}x{table.n}_{a}_vs_{b}.csv", table.to_frame())
    writer.add_json(f"qq_{a}_vs_{b}.json", report.to_dict())


def _validate(config: ExperimentConfig, writer: ArtifactWriter):
    for p, n in config.size_list:
        model = build_model(config.model.mode, p, config.model.coeffs)
        report = validate_assumptions(model, p / n)
        writer.add_json(f"validate_{p}x{n}.json", dict(model=model.to_dict(), assumptions=report.to_dict()))


def _moments(config: ExperimentConfig, writer: ArtifactWriter):
    for j, spec in enumerate(config.specs):
        sweep = []
        for i, (p, n) in enumerate(config.size_list):
            model = build_model(config.model.mode, p, config.model.coeffs)
            report = moment_estimates(
                model,
                spec,
                n,
                config.replicates,
                config.seed,
                experiment_index=_stream(config, i, j),
                threads=config.threads,
                batches=config.tolerances.batches,
            )
            out = report.to_dict()
            if model.is_identity:
                out["laplace_n_E_Y4"] = n * laplace_fourth_moment(spec, n)
                out["laplace_n_E_Y1Y2"] = n * laplace_cross_moment(spec, n)
            writer.add_json(f"moments_{p}x{n}_{spec.label}.json", out)
            sweep.append(dict(p=p, n=n, estimate=report.n_E_Y4.mean, stderr=report.n_E_Y4.stderr))
        writer.add_frame(f"moments_sweep_{spec.label}.csv", pd.DataFrame(sweep))


_RUNNERS: Dict[str, Callable[[ExperimentConfig, ArtifactWriter], None]] = {
    ExperimentKind.SIMULATE: _simulate,
    ExperimentKind.MP: _mp,
    ExperimentKind.LSD: _lsd,
    ExperimentKind.DIAGNOSE: _diagnose,
    ExperimentKind.QQ: _qq,
    ExperimentKind.VALIDATE: _validate,
    ExperimentKind.MOMENTS: _moments,
}


def manifest(config: ExperimentConfig, files) -> dict:
    return dict(
        manifest_version=MANIFEST_VERSION,
        library="rmcorr-py",
        version=library_version(),
        seed=config.seed,
        stream_derivation=STREAM_DERIVATION,
        files=list(files),
        config=config.model_dump(mode="json"),
    )


def run(config: ExperimentConfig, writer: ArtifactWriter = None) -> ArtifactWriter:
    """Validate, compute every artifact of the experiment in memory, then write them together with the manifest"""
    check_preconditions(config)
    writer = ArtifactWriter(config.destination()) if writer is None else writer
    logging.info(f'Running experiment "{config.experiment}" with seed {config.seed}')
    _RUNNERS[config.experiment](config, writer)
    writer.add_json("manifest.json", manifest(config, writer.names))
    writer.commit()
    return writer
