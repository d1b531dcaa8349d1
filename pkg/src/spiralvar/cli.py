"""Command-line interface.

Every subcommand prints a single JSON object to stdout with sorted keys and
shortest-round-trip numbers, embedding the tool version and the effective
configuration, so identical invocations produce byte-identical output.
Diagnostics go to stderr.  Exit codes: 0 success, 1 analysis error,
2 usage error.
"""

from __future__ import annotations

import dataclasses
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__
from .arc import SampledArc
from .arcfiles import load_arc, read_arc_file, save_arc
from .classify import almost_circularity, classify_spiral, growth_rate, sandwich_from_arc
from .config import RunConfig, load_config
from .errors import SpiralvarError
from .reparam import build_param, discrete_seminorm, seminorm_of_coords
from .spiral import SpiralSpec, decompose_rings, generate
from .stretch import StretchMap, apply_stretch, empirical_holder, exponent_bounds
from .variation import s_variation

_KIND_ALIASES = {
    "poly": "polynomial",
    "polynomial": "polynomial",
    "ell": "elliptical",
    "elliptical": "elliptical",
    "tab": "tabulated",
    "tabulated": "tabulated",
}


def _plain(obj):
    """Recursively convert numpy containers/scalars for JSON output."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def _emit(payload: dict, cfg: RunConfig, out: str | None = None) -> None:
    doc = {"version": __version__, "config": dataclasses.asdict(cfg)}
    doc.update(payload)
    text = json.dumps(_plain(doc), sort_keys=True)
    click.echo(text)
    if out:
        Path(out).write_text(text + "\n")


def _read_table(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Read a radius table CSV with header ``t,phi``."""
    from .errors import ArcFormatError

    lines = Path(path).read_text().splitlines()
    if not lines or [h.strip() for h in lines[0].split(",")] != ["t", "phi"]:
        raise ArcFormatError(f'{Path(path).name}, line 1: expected header "t,phi"')
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != 2:
            raise ArcFormatError(f"{Path(path).name}, line {lineno}: expected 2 columns")
        try:
            rows.append((float(cells[0]), float(cells[1])))
        except ValueError as e:
            raise ArcFormatError(f"{Path(path).name}, line {lineno}: {e}") from e
    data = np.array(rows)
    return data[:, 0], data[:, 1]


def _spec_from_flags(kind, p, q, turns, samples_per_turn, table) -> SpiralSpec:
    kind = _KIND_ALIASES[kind]
    kwargs = dict(kind=kind, turns=turns, samples_per_turn=samples_per_turn)
    if kind == "tabulated":
        if table is None:
            raise click.UsageError("--table is required for the tabulated kind")
        tt, tphi = _read_table(table)
        kwargs.update(table_t=tt, table_phi=tphi)
    else:
        kwargs.update(p=p, q=q)
        if p is None:
            raise click.UsageError(f"--p is required for kind {kind}")
        if kind == "elliptical" and q is None:
            raise click.UsageError("--q is required for the elliptical kind")
        if kind == "polynomial":
            kwargs["q"] = None
    return SpiralSpec(**kwargs)


def _write_ring_csv(path: str, decomposition) -> None:
    rows = ["j,phi_j,length_j,diam_j"]
    rows.extend(
        f"{r.j},{r.phi!r},{r.length!r},{r.diam!r}" for r in decomposition.rings
    )
    Path(path).write_text("\n".join(rows) + "\n")


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="TOML or INI config file; explicit flags still win.")
@click.option("--jobs", type=int, default=None, help="Worker bound for ring/pair batches.")
@click.option("--seed", type=int, default=None, help="Seed for randomized subsampling.")
@click.pass_context
def cli(ctx, config_path, jobs, seed):
    """Variation, Hölder parametrization and ring analysis of spiral arcs."""
    ctx.obj = load_config(config_path, jobs=jobs, seed=seed)


@cli.command()
@click.option("--kind", type=click.Choice(sorted(set(_KIND_ALIASES))), default="poly")
@click.option("--p", type=float, default=None)
@click.option("--q", type=float, default=None)
@click.option("--turns", type=int, default=50)
@click.option("--samples-per-turn", type=int, default=256)
@click.option("--table", type=click.Path(exists=True), default=None,
              help='Radius table CSV ("t,phi") for the tabulated kind.')
@click.option("--out", type=click.Path(), required=True)
@click.pass_obj
def gen(cfg, kind, p, q, turns, samples_per_turn, table, out):
    """Generate a sampled spiral arc and write it to a file."""
    spec = _spec_from_flags(kind, p, q, turns, samples_per_turn, table)
    arc = generate(spec)
    save_arc(arc, out)
    click.echo(f"wrote {len(arc)} samples to {out}", err=True)
    _emit({"out": str(out), "n": len(arc), "spec": spec.meta()}, cfg)


@cli.command()
@click.option("--s", type=float, required=True)
@click.option("--arc", "arc_path", type=click.Path(exists=True), required=True)
@click.option("--profile-out", type=click.Path(), default=None,
              help='Write the prefix profile as CSV "i,t,V".')
@click.pass_obj
def variation(cfg, s, arc_path, profile_out):
    """Exact s-variation of an arc with an optimal partition."""
    arc = load_arc(arc_path)
    res = s_variation(arc, s)
    if profile_out:
        rows = ["i,t,V"]
        rows.extend(
            f"{i},{float(t)!r},{float(v)!r}"
            for i, (t, v) in enumerate(zip(arc.params, res.prefix))
        )
        Path(profile_out).write_text("\n".join(rows) + "\n")
    _emit({"s": res.s, "value": res.value, "breakpoints": res.breakpoints}, cfg)


@cli.command()
@click.option("--s", type=float, required=True)
@click.option("--arc", "arc_path", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(), required=True)
@click.pass_obj
def param(cfg, s, arc_path, out):
    """Write the arc reparametrized by normalized prefix variation."""
    arc = load_arc(arc_path)
    res = s_variation(arc, s)
    hp = build_param(arc, res)
    save_arc(SampledArc(hp.u, arc.points, arc.meta), out, key="u")
    _emit({"s": res.s, "value": res.value, "out": str(out), "n": len(arc)}, cfg)


@cli.command()
@click.option("--alpha", type=float, required=True)
@click.option("--arc", "arc_path", type=click.Path(exists=True), required=True)
@click.pass_obj
def seminorm(cfg, alpha, arc_path):
    """Discrete Hölder seminorm over the file's own coordinate.

    The coordinate column ("u" from `param` output, or "t") is normalized
    affinely to [0, 1] before the pair scan.
    """
    key, arc = read_arc_file(arc_path)
    v = arc.params
    coords = (v - v[0]) / (v[-1] - v[0])
    sn = seminorm_of_coords(coords, arc.points, alpha)
    _emit(
        {
            "alpha": sn.alpha,
            "seminorm": sn.value,
            "witness": [sn.witness[0], sn.witness[1]],
            "coordinate": key,
            "n_used": sn.n_used,
            "subsampled": sn.subsampled,
        },
        cfg,
    )


@cli.command()
@click.option("--kind", type=click.Choice(sorted(set(_KIND_ALIASES))), default="poly")
@click.option("--p", type=float, default=None)
@click.option("--q", type=float, default=None)
@click.option("--s", type=float, required=True)
@click.option("--turns", type=int, default=200)
@click.option("--samples-per-turn", type=int, default=256)
@click.option("--table", type=click.Path(exists=True), default=None)
@click.pass_obj
def classify(cfg, kind, p, q, s, turns, samples_per_turn, table):
    """Decide whether the spiral is a (1/s)-Hölder arc."""
    spec = _spec_from_flags(kind, p, q, turns, samples_per_turn, table)
    v = classify_spiral(spec, s)
    _emit(
        {
            "kind": v.kind,
            "s": v.s,
            "verdict": v.verdict,
            "decay_exponent_fit": v.decay_exponent_fit,
            "partial_sums": [[j, val] for j, val in v.partial_sums],
            "rationale": v.rationale,
        },
        cfg,
    )


@cli.command()
@click.option("--s", type=float, required=True)
@click.option("--arc", "arc_path", type=click.Path(exists=True), required=True)
@click.option("--csv-out", type=click.Path(), default=None,
              help='Write the ring decomposition as CSV "j,phi_j,length_j,diam_j".')
@click.pass_obj
def rings(cfg, s, arc_path, csv_out):
    """Ring decomposition and sandwich comparison for a ring-aligned arc."""
    arc = load_arc(arc_path)
    decomp = decompose_rings(arc)
    rep = sandwich_from_arc(arc, s, tol=cfg.sandwich_slack, jobs=cfg.jobs, decomposition=decomp)
    if csv_out:
        _write_ring_csv(csv_out, decomp)
    _emit(
        {
            "s": rep.s,
            "tol": rep.tol,
            "sum_rings": rep.sum_rings,
            "total": rep.total,
            "lower_ok": rep.lower_ok,
            "upper_ok": rep.upper_ok,
            "rings_ok": rep.rings_ok,
            "c_phi": rep.c_phi,
            "per_ring": rep.per_ring,
        },
        cfg,
    )


@cli.command()
@click.option("--s", type=float, required=True)
@click.option("--p", type=float, required=True)
@click.option("--jlist", "--Jlist", "jlist", type=str, required=True,
              help="Comma-separated strictly increasing depths, e.g. 25,50,100.")
@click.option("--samples-per-turn", type=int, default=128)
@click.option("--csv-out", type=click.Path(), default=None, help='Write totals as CSV "J,value".')
@click.pass_obj
def growth(cfg, s, p, jlist, samples_per_turn, csv_out):
    """Growth of truncated variation totals for a polynomial spiral."""
    try:
        depths = [int(x) for x in jlist.split(",") if x.strip()]
    except ValueError as e:
        raise click.UsageError(f"--jlist must be comma-separated integers: {e}") from e
    spec = SpiralSpec(kind="polynomial", p=p, turns=max(depths, default=1),
                      samples_per_turn=samples_per_turn)
    res = growth_rate(spec, s, depths, jobs=cfg.jobs)
    if csv_out:
        rows = ["J,value"]
        rows.extend(f"{j},{v!r}" for j, v in res.entries)
        Path(csv_out).write_text("\n".join(rows) + "\n")
    _emit({"s": res.s, "slope": res.slope, "entries": [[j, v] for j, v in res.entries]}, cfg)


@cli.command()
@click.option("--beta", type=float, required=True)
@click.option("--arc", "arc_path", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(), required=True)
@click.pass_obj
def stretch(cfg, beta, arc_path, out):
    """Apply the radial stretch with exponent beta to an arc."""
    arc = load_arc(arc_path)
    save_arc(apply_stretch(StretchMap(beta), arc), out)
    _emit({"beta": beta, "out": str(out), "n": len(arc)}, cfg)


@cli.command("holder-est")
@click.option("--src", type=click.Path(exists=True), required=True)
@click.option("--dst", type=click.Path(exists=True), required=True)
@click.option("--alpha-step", type=float, default=0.01)
@click.option("--pairs", type=int, default=1_000_000)
@click.pass_obj
def holder_est(cfg, src, dst, alpha_step, pairs):
    """Empirical sharp Hölder exponent of a sampled correspondence."""
    est = empirical_holder(
        load_arc(src), load_arc(dst), alpha_step=alpha_step, n_pairs=pairs, seed=cfg.seed
    )
    _emit(
        {
            "best_alpha": est.best_alpha,
            "saturated": est.saturated,
            "lipschitz_seminorm": est.lipschitz_seminorm,
            "n_pairs_used": est.n_pairs_used,
            "n_bins": est.n_bins,
            "blowup_factor": est.blowup_factor,
            "alphas": est.alphas,
            "envelope_ratios": est.envelope_ratios,
            "seminorms": est.seminorms,
        },
        cfg,
    )


@cli.command()
@click.option("--p", type=float, required=True)
@click.option("--q", type=float, required=True)
@click.option("--r", type=float, required=True)
@click.option("--se", type=float, required=True)
@click.pass_obj
def bounds(cfg, p, q, r, se):
    """Closed-form Hölder-exponent bounds for a spiral-to-spiral map."""
    b = exponent_bounds(p, q, r, se)
    for line in (
        f"{'bound':<12}{'value':>12}  applies",
        f"{'general':<12}{b.general_bound:>12.6f}  ({b.general_case})",
        f"{'stretch':<12}{b.stretch_bound:>12.6f}  (r/p)",
        f"{'tightest':<12}{b.tightest:>12.6f}  ({b.tightest_source})",
        f"{'qc':<12}{b.qc_threshold:>12.6f}  (distortion threshold p/r)",
    ):
        click.echo(line, err=True)
    _emit(
        {
            "p": b.p, "q": b.q, "r": b.r, "s": b.s,
            "general_bound": b.general_bound,
            "general_case": b.general_case,
            "stretch_bound": b.stretch_bound,
            "tightest": b.tightest,
            "tightest_source": b.tightest_source,
            "qc_threshold": b.qc_threshold,
            "note": b.note,
        },
        cfg,
    )


@cli.command()
@click.option("--out", type=click.Path(), default=None, help="Also write the summary to a file.")
@click.pass_obj
def report(cfg, out):
    """Desk-scale reproduction pipeline with a single summary JSON."""
    checks: list[bool] = []

    bench = []
    for label, (p, q, r, se) in (
        ("base", (0.6, 0.6, 0.5, 0.5)),
        ("q=1", (0.6, 1.0, 0.5, 0.5)),
        ("q=2", (0.6, 2.0, 0.5, 0.5)),
    ):
        b = exponent_bounds(p, q, r, se)
        bench.append(
            {
                "case": label,
                "general_bound": b.general_bound,
                "stretch_bound": b.stretch_bound,
                "tightest": b.tightest,
                "tightest_source": b.tightest_source,
            }
        )
    checks.append(abs(bench[0]["general_bound"] - 11.0 / 12.0) < 1e-12)
    checks.append(abs(bench[0]["stretch_bound"] - 5.0 / 6.0) < 1e-12)
    checks.append(abs(bench[1]["general_bound"] - 7.0 / 8.0) < 1e-12)
    checks.append(abs(bench[2]["general_bound"] - 43.0 / 52.0) < 1e-12)
    checks.append(bench[2]["tightest_source"] == "general")

    verdicts = []
    for p, s in ((0.5, 2.0), (0.5, 3.0), (1.0, 2.0)):
        spec = SpiralSpec(kind="polynomial", p=p, turns=50, samples_per_turn=64)
        v = classify_spiral(spec, s)
        verdicts.append({"p": p, "s": s, "verdict": v.verdict})
    checks.append(verdicts[0]["verdict"] == "diverges")
    checks.append(verdicts[1]["verdict"] == "converges")
    checks.append(verdicts[2]["verdict"] == "converges")

    spec = SpiralSpec(kind="polynomial", p=0.5, turns=30, samples_per_turn=64)
    sw = sandwich_from_arc(generate(spec), 3.0, tol=cfg.sandwich_slack, jobs=cfg.jobs)
    sandwich = {
        "sum_rings": sw.sum_rings,
        "total": sw.total,
        "lower_ok": sw.lower_ok,
        "upper_ok": sw.upper_ok,
        "rings_ok": sw.rings_ok,
    }
    checks.extend([bool(sw.lower_ok), bool(sw.upper_ok), bool(sw.rings_ok)])

    src = generate(SpiralSpec(kind="polynomial", p=1.0, turns=40, samples_per_turn=64))
    fwd = apply_stretch(StretchMap(0.5), src)
    target = generate(SpiralSpec(kind="polynomial", p=0.5, turns=40, samples_per_turn=64))
    back = apply_stretch(StretchMap(2.0), fwd)
    map_err = float(np.abs(fwd.points - target.points).max())
    rt_err = float(np.abs(back.points - src.points).max())
    checks.append(map_err < 1e-12)
    checks.append(rt_err < 1e-12)

    est_src = generate(SpiralSpec(kind="polynomial", p=1.0, turns=4000, samples_per_turn=32))
    est_dst = apply_stretch(StretchMap(0.5), est_src)
    est = empirical_holder(est_src, est_dst, n_pairs=200_000, seed=cfg.seed)
    checks.append(0.4 <= est.best_alpha <= 0.6)

    ac = almost_circularity(SpiralSpec(kind="polynomial", p=1.0, turns=100, samples_per_turn=128))
    checks.append(bool(ac.almost_circular))

    _emit(
        {
            "exponent_bounds": bench,
            "classification": verdicts,
            "sandwich": sandwich,
            "stretch_map_error": map_err,
            "stretch_roundtrip_error": rt_err,
            "holder_estimate": {"best_alpha": est.best_alpha, "n_pairs": est.n_pairs_used},
            "almost_circularity": {"c_phi": ac.c_phi, "almost_circular": ac.almost_circular},
            "ok": all(checks),
            "checks_passed": sum(checks),
            "checks_total": len(checks),
        },
        cfg,
        out=out,
    )


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as e:
        return int(e.exit_code)
    except click.UsageError as e:
        e.show()
        return 2
    except click.ClickException as e:
        e.show()
        return 1
    except SpiralvarError as e:
        click.echo(f"error: {e}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
