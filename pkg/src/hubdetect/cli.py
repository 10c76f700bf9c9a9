"""Command-line entry point.

Subcommands: detect, fit, agree, eval, gen, report (report bundles
everything). All outputs are plain JSON/CSV/TSV files under the
configured output directory, written deterministically: rerunning with
the same corpus, config and seed reproduces every byte. The final
``index.json`` lists every file the invocation produced and is written
last.

Exit codes: 0 success, 1 validation/config error, 2 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .agreement import group_fleiss, jaccard_matrix, matrix_csv_lines
from .config import RunConfig, apply_overrides, load_config, normalize_tau
from .detectors.base import HubSet, load_hubset
from .detectors.mdl import MdlDetector
from .detectors.registry import (
    GROUPS,
    METHOD_GROUPS,
    METHOD_ORDER,
    build_detector,
    method_direction,
    slug,
)
from .detectors.strength import StrengthDetector, strength_csv_lines
from .errors import ConfigError, ConvergenceError, HubDetectError, InsufficientDataError
from .evaluation import evaluate_all, load_labels, report_tsv_lines
from .generate import KINDS, PlantedGraph, STOCHASTIC_KINDS, gen_synthetic
from .metrics import degrees, metrics_tsv_lines
from .scalefree import ccdf_rows, fit_powerlaw, gof_pvalue, scale_free_verdict
from .sdg import Corpus, load_corpus, save_sdg

_FIT_METRICS = (("degree", "total"), ("in_degree", "in"), ("out_degree", "out"))


def _safe_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name)


class _Writer:
    """Collects written paths so the index can be emitted last."""

    def __init__(self, out_dir: Path):
        self.out_dir = out_dir
        self.paths: list[Path] = []

    def write(self, rel: str, text: str) -> Path:
        path = self.out_dir / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        self.paths.append(path)
        return path

    def write_index(self) -> None:
        index_path = self.out_dir / "index.json"
        fresh = sorted(str(p.relative_to(self.out_dir)) for p in self.paths)
        merged = set(fresh)
        if index_path.exists():
            try:
                merged |= set(json.loads(index_path.read_text(encoding="utf-8"))["files"])
            except (ValueError, KeyError, OSError):
                pass  # stale or foreign index; rebuild from this run
        merged = {f for f in merged if (self.out_dir / f).exists()}
        payload = json.dumps({"files": sorted(merged)}, indent=2, sort_keys=True) + "\n"
        index_path.parent.mkdir(parents=True, exist_ok=True)
        index_path.write_text(payload, encoding="utf-8")


def _load_cfg_corpus(cfg: RunConfig) -> Corpus:
    if not cfg.corpus:
        raise ConfigError("no corpus paths given (config 'corpus' or --corpus)")
    return load_corpus([Path(p) for p in cfg.corpus])


def _enabled(cfg: RunConfig) -> list[str]:
    chosen = set(cfg.methods)
    return [m for m in METHOD_ORDER if m in chosen]


def _fit_detectors(cfg: RunConfig, corpus: Corpus) -> dict[str, object]:
    fitted = {}
    for mid in _enabled(cfg):
        det = build_detector(
            mid,
            crop_quantile=cfg.crop_quantile,
            threshold_quantile=cfg.threshold_quantile,
            tau=cfg.tau,
        )
        try:
            det.fit(corpus)
        except HubDetectError as exc:
            raise type(exc)(f"method {mid}: {exc}") from exc
        fitted[mid] = det
    return fitted


def _write_hubsets(writer: _Writer, fitted: dict) -> None:
    for mid, det in fitted.items():
        writer.write(f"hubsets/{slug(mid)}.json", det.hub_set_.to_json())


def _load_hubsets(cfg: RunConfig) -> dict[str, HubSet]:
    hubsets: dict[str, HubSet] = {}
    for mid in _enabled(cfg):
        path = Path(cfg.out_dir) / "hubsets" / f"{slug(mid)}.json"
        if not path.exists():
            raise ConfigError(f"missing HubSet file {path}; run 'detect' first")
        hubsets[mid] = load_hubset(path, method_id=mid, direction=method_direction(mid))
    return hubsets


def _agreement_outputs(writer: _Writer, cfg: RunConfig, corpus: Corpus, hubsets: dict[str, HubSet]) -> None:
    for group in GROUPS:
        ids = [m for m in METHOD_GROUPS[group] if m in hubsets]
        if not ids:
            continue
        if len(ids) < 2:
            raise InsufficientDataError(
                f"group '{group}' has only {len(ids)} hub set(s); need at least 2"
            )
        matrix = jaccard_matrix([hubsets[m] for m in ids])
        writer.write(
            f"agreement/jaccard_{group}.csv", "\n".join(matrix_csv_lines(matrix)) + "\n"
        )
    kappas = group_fleiss(hubsets, corpus, METHOD_GROUPS)
    payload = {
        name: {
            "kappa": res.value,
            "band": res.band,
            "n_raters": res.n_raters,
            "n_subjects": res.n_subjects,
        }
        for name, res in kappas.items()
    }
    writer.write(
        "agreement/fleiss.json", json.dumps(payload, indent=2, sort_keys=True) + "\n"
    )


def _fit_outputs(writer: _Writer, cfg: RunConfig, corpus: Corpus) -> None:
    seed = cfg.require_seed()
    payload = []
    for name, direction in _FIT_METRICS:
        seq: list[int] = []
        for g in corpus.graphs:
            seq.extend(degrees(g, direction).values.values())
        fit = fit_powerlaw(seq)
        gof = gof_pvalue(seq, fit, n_bootstrap=cfg.n_bootstrap, seed=seed)
        payload.append({
            "metric": name,
            "alpha": fit.alpha,
            "xmin": fit.xmin,
            "ks": fit.ks_distance,
            "n_tail": fit.n_tail,
            "p": gof.p_value,
            "n_bootstrap": gof.n_bootstrap,
            "seed": gof.seed,
            "alpha_level": gof.alpha_level,
            "verdict": scale_free_verdict(gof),
            "verdict_inverted": scale_free_verdict(gof, convention="inverted"),
        })
        lines = ["x,empirical_ccdf,fit_ccdf"]
        for x, emp, model in ccdf_rows(seq, fit):
            fit_cell = "" if model is None else f"{model:.17g}"
            lines.append(f"{x},{emp:.17g},{fit_cell}")
        writer.write(f"fit/ccdf_{name}.csv", "\n".join(lines) + "\n")
    writer.write(
        "fit/scale_free.json", json.dumps(payload, indent=2, sort_keys=True) + "\n"
    )


def _eval_outputs(writer: _Writer, cfg: RunConfig, hubsets: dict[str, HubSet]) -> None:
    if not cfg.labels:
        raise ConfigError("precision evaluation needs a labels file (--labels)")
    gt = load_labels(cfg.labels)
    reports = evaluate_all(list(hubsets.values()), gt, cfg.ih_modes)
    writer.write(
        "evaluation/precision.tsv",
        "\n".join(report_tsv_lines(reports, cfg.ih_modes)) + "\n",
    )


def _detector_extras(writer: _Writer, fitted: dict) -> None:
    for mid, det in fitted.items():
        if isinstance(det, MdlDetector):
            for system_id, res in sorted(det.results_.items()):
                lines = ["h,bits"] + [f"{h},{bits:.17g}" for h, bits in res.dl_curve]
                writer.write(
                    f"mdl/{_safe_name(system_id)}__{slug(mid)}.csv",
                    "\n".join(lines) + "\n",
                )
        elif isinstance(det, StrengthDetector):
            writer.write(
                f"strength/{det.centrality}.csv",
                "\n".join(strength_csv_lines(det.records_)) + "\n",
            )


def cmd_detect(cfg: RunConfig) -> int:
    corpus = _load_cfg_corpus(cfg)
    writer = _Writer(Path(cfg.out_dir))
    fitted = _fit_detectors(cfg, corpus)
    _write_hubsets(writer, fitted)
    writer.write_index()
    return 0


def cmd_fit(cfg: RunConfig) -> int:
    corpus = _load_cfg_corpus(cfg)
    writer = _Writer(Path(cfg.out_dir))
    _fit_outputs(writer, cfg, corpus)
    writer.write_index()
    return 0


def cmd_agree(cfg: RunConfig) -> int:
    corpus = _load_cfg_corpus(cfg)
    writer = _Writer(Path(cfg.out_dir))
    _agreement_outputs(writer, cfg, corpus, _load_hubsets(cfg))
    writer.write_index()
    return 0


def cmd_eval(cfg: RunConfig) -> int:
    writer = _Writer(Path(cfg.out_dir))
    _eval_outputs(writer, cfg, _load_hubsets(cfg))
    writer.write_index()
    return 0


def cmd_report(cfg: RunConfig) -> int:
    """Full pipeline: metrics, detection, agreement, fit, evaluation."""
    corpus = _load_cfg_corpus(cfg)
    writer = _Writer(Path(cfg.out_dir))
    writer.write("metrics.tsv", "\n".join(metrics_tsv_lines(corpus)) + "\n")
    fitted = _fit_detectors(cfg, corpus)
    _write_hubsets(writer, fitted)
    _detector_extras(writer, fitted)
    hubsets = {mid: det.hub_set_ for mid, det in fitted.items()}
    _agreement_outputs(writer, cfg, corpus, hubsets)
    _fit_outputs(writer, cfg, corpus)
    if cfg.labels:
        _eval_outputs(writer, cfg, hubsets)
    writer.write_index()
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise ConfigError(f"-P expects key=value, got {item!r}")
        key, raw = item.split("=", 1)
        try:
            value: object = int(raw)
        except ValueError:
            try:
                value = float(raw)
            except ValueError:
                value = raw
        params[key] = value
    if args.kind in STOCHASTIC_KINDS and args.seed is None:
        raise ConfigError(f"generator '{args.kind}' needs --seed")
    result = gen_synthetic(args.kind, params, seed=args.seed)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    if args.kind == "powerlaw_sequence":
        out.write_text("".join(f"{v}\n" for v in result), encoding="utf-8")
    elif isinstance(result, PlantedGraph):
        save_sdg(result.sdg, out)
        rows = [
            {"system": result.sdg.system_id, "service": n,
             "label": "hub" if n in result.hubs else "none"}
            for n in result.sdg.sorted_nodes()
        ]
        labels_path = out.with_suffix(".labels.json")
        labels_path.write_text(
            json.dumps(rows, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    else:
        save_sdg(result, out)
    return 0


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract reserves
    # 2 for numerical non-convergence, so remap to 1.
    def error(self, message: str):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON config file")
    sub.add_argument("--corpus", action="append", metavar="PATH",
                     help="SDG file or directory (repeatable)")
    sub.add_argument("--out", dest="out_dir", help="output directory")
    sub.add_argument("--methods", help="comma-separated method ids (default: all 19)")
    sub.add_argument("--tau", action="append", metavar="[METHOD=]VALUE",
                     help="strength cut, globally or per method (repeatable)")
    sub.add_argument("--crop-quantile", type=float, dest="crop_quantile")
    sub.add_argument("--threshold-quantile", type=float, dest="threshold_quantile")
    sub.add_argument("--bootstrap", type=int, dest="n_bootstrap",
                     help="bootstrap replicate count (default 1000)")
    sub.add_argument("--seed", type=int, help="RNG seed for the bootstrap")
    sub.add_argument("--labels", help="ground-truth labels JSON")
    sub.add_argument("--ih-modes", dest="ih_modes",
                     help="comma-separated subset of tp,ignore,fp")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hubdetect",
                     description="Hub-like component detection in service dependency graphs")
    subs = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("detect", "run enabled detectors, write one hub-set JSON each"),
        ("fit", "power-law fit + bootstrap goodness of fit on pooled degrees"),
        ("agree", "Jaccard matrices and Fleiss kappas over existing hub sets"),
        ("eval", "precision against ground-truth labels"),
        ("report", "full pipeline: everything above plus metric/plot exports"),
    ):
        sub = subs.add_parser(name, help=doc)
        _add_common(sub)
    gen = subs.add_parser("gen", help="generate a synthetic graph or degree sequence")
    gen.add_argument("--kind", required=True, choices=KINDS)
    gen.add_argument("--out", required=True, help="output file")
    gen.add_argument("--seed", type=int)
    gen.add_argument("-P", "--param", action="append", metavar="KEY=VALUE",
                     help="generator parameter (repeatable)")
    return parser


def _parse_tau_flags(items: list[str] | None) -> dict[str, float] | None:
    if not items:
        return None
    merged: dict[str, float] = {}
    for item in items:
        if "=" in item:
            method, raw = item.rsplit("=", 1)
            try:
                merged[method] = float(raw)
            except ValueError:
                raise ConfigError(f"--tau {item!r}: not a number") from None
        else:
            try:
                merged.update(normalize_tau(float(item)))
            except ValueError:
                raise ConfigError(f"--tau {item!r}: not a number") from None
    return merged


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    methods = tuple(m.strip() for m in args.methods.split(",")) if args.methods else None
    ih_modes = tuple(m.strip() for m in args.ih_modes.split(",")) if args.ih_modes else None
    return apply_overrides(
        cfg,
        corpus=tuple(args.corpus) if args.corpus else None,
        methods=methods,
        tau=_parse_tau_flags(args.tau),
        crop_quantile=args.crop_quantile,
        threshold_quantile=args.threshold_quantile,
        n_bootstrap=args.n_bootstrap,
        seed=args.seed,
        labels=args.labels,
        ih_modes=ih_modes,
        out_dir=args.out_dir,
    )


_COMMANDS = {
    "detect": cmd_detect,
    "fit": cmd_fit,
    "agree": cmd_agree,
    "eval": cmd_eval,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help or usage error
        return int(exc.code or 0)
    try:
        if args.command == "gen":
            return cmd_gen(args)
        cfg = _resolve_config(args)
        return _COMMANDS[args.command](cfg)
    except ConvergenceError as exc:
        print(f"hubdetect: numerical non-convergence: {exc}", file=sys.stderr)
        return 2
    except (HubDetectError, OSError) as exc:
        print(f"hubdetect: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
