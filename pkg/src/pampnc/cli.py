"""Command-line front end: optimize, sweep, simulate, tables.

Reports are emitted as JSON (one top-level object with ``schema_version``,
``spec`` and ``results``) or CSV (header row, one record per line). The sweep
report can additionally be rendered to a figure with ``--plot``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import asdict, dataclass, field

from . import catalog
from .analytic import SymbolMapping, transition_model
from .constellation import InvalidOrder
from .denoise import AmbiguityError
from .search import (
    Candidate,
    InvalidLabels,
    NoSignChange,
    OrbitInconsistency,
    bit_error_profile,
    canonical_form,
    distinct_bit_mappings,
    enumerate_symbol_classes,
    make_bit_mapping,
    optimize_ber,
    optimize_ser,
    profile_matrix,
    sweep,
)
from .simulator import InvalidConfig, SimConfig, derived_seed, run_trials, sweep_sim

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INTERNAL = 3

MIN_SNR_STEP = 0.1


class ConfigError(ValueError):
    """Invalid experiment configuration; message names the offending field."""


@dataclass
class ExperimentSpec:
    command: str
    scenario: str | None = None
    criterion: str = "ser"
    snr: tuple[float, ...] = ()
    mappings: tuple[str, ...] = ()
    bitmaps: tuple[str, ...] = ()
    simulate: bool = False
    trials: int = 1_000_000
    seed: int = 0
    format: str = "json"
    out: str | None = None
    plot: str | None = None


# ---------------------------------------------------------------------------
# argument handling

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pampnc",
        description="Relay symbol / user bit mapping optimization for two-way relay PAM links",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_criterion=True):
        p.add_argument("--scenario", choices=sorted(catalog.SCENARIOS))
        if with_criterion:
            p.add_argument("--criterion", choices=("ser", "ber"))
        p.add_argument("--snr", help="SNR points in dB, comma separated (e.g. '10' or '-10,0,10')")
        p.add_argument("--snr-range", help="SNR grid 'start:stop:step' in dB, step >= 0.1")
        p.add_argument("--seed", type=int)
        p.add_argument("--format", choices=("json", "csv"))
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--config", help="JSON file with ExperimentSpec fields; flags override")

    p_opt = sub.add_parser("optimize", help="search for the optimal mapping(s) per SNR point")
    add_common(p_opt)

    p_sweep = sub.add_parser("sweep", help="tabulate candidate mappings and the optimum over an SNR grid")
    add_common(p_sweep)
    p_sweep.add_argument("--mapping", action="append", dest="mappings",
                         help="catalog number or explicit points '-3,-1,1,3'; repeatable")
    p_sweep.add_argument("--bitmap", action="append", dest="bitmaps",
                         help="gray|binary|third or explicit labels '00,01,11,10'; repeatable")
    p_sweep.add_argument("--simulate", action=argparse.BooleanOptionalAction,
                         help="add empirical rates from Monte Carlo trials")
    p_sweep.add_argument("--trials", type=int)
    p_sweep.add_argument("--plot", help="also render the sweep to this figure file (png/pdf)")

    p_sim = sub.add_parser("simulate", help="Monte Carlo simulation of one mapping/bitmap pair")
    add_common(p_sim, with_criterion=False)
    p_sim.add_argument("--mapping", action="append", dest="mappings")
    p_sim.add_argument("--bitmap", action="append", dest="bitmaps")
    p_sim.add_argument("--trials", type=int)

    p_tab = sub.add_parser("tables", help="print reference mappings, bit-error tables and counts")
    p_tab.add_argument("--format", choices=("json", "csv", "text"))
    p_tab.add_argument("--out")
    p_tab.add_argument("--config")
    return parser


def _parse_snr_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"snr: cannot parse {text!r} as comma-separated dB values") from None


def _parse_snr_range(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"snr-range: expected 'start:stop:step', got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"snr-range: cannot parse {text!r}") from None
    if step < MIN_SNR_STEP:
        raise ConfigError(f"snr-range: step must be >= {MIN_SNR_STEP} dB, got {step}")
    if stop < start:
        raise ConfigError(f"snr-range: stop {stop} below start {start}")
    grid = []
    value = start
    while value <= stop + 1e-9:
        grid.append(round(value, 9))
        value = start + (len(grid)) * step
    return tuple(grid)


def resolve_spec(args: argparse.Namespace) -> ExperimentSpec:
    """Merge CLI flags over an optional --config file and validate."""
    from_file = {}
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            with open(config_path, encoding="utf-8") as fh:
                from_file = json.load(fh)
        except (OSError, json.JSONDecodeError) as err:
            raise ConfigError(f"config: cannot read {config_path!r} ({err})") from None
        if not isinstance(from_file, dict):
            raise ConfigError("config: top level must be a JSON object")
        unknown = set(from_file) - {f for f in ExperimentSpec.__dataclass_fields__}
        if unknown:
            raise ConfigError(f"config: unknown fields {sorted(unknown)}")

    def pick(name, default=None):
        value = getattr(args, name, None)
        if value is not None:
            return value
        if name in from_file and from_file[name] is not None:
            return from_file[name]
        return default

    snr: tuple[float, ...] = ()
    snr_arg = pick("snr")
    range_arg = pick("snr_range")
    if snr_arg is not None and range_arg is not None:
        raise ConfigError("snr: give either --snr or --snr-range, not both")
    if snr_arg is not None:
        snr = (_parse_snr_list(snr_arg) if isinstance(snr_arg, str)
               else tuple(float(v) for v in snr_arg))
    elif range_arg is not None:
        snr = _parse_snr_range(range_arg)

    spec = ExperimentSpec(
        command=args.command,
        scenario=pick("scenario"),
        criterion=pick("criterion", "ser"),
        snr=snr,
        mappings=tuple(pick("mappings", ()) or ()),
        bitmaps=tuple(pick("bitmaps", ()) or ()),
        simulate=bool(pick("simulate", False)),
        trials=int(pick("trials", 1_000_000)),
        seed=int(pick("seed", 0)),
        format=pick("format", "text" if args.command == "tables" else "json"),
        out=pick("out"),
        plot=pick("plot"),
    )
    _validate_spec(spec)
    return spec


def _validate_spec(spec: ExperimentSpec) -> None:
    if spec.command != "tables":
        if spec.scenario is None:
            raise ConfigError("scenario: required")
        if spec.scenario not in catalog.SCENARIOS:
            raise ConfigError(f"scenario: unknown {spec.scenario!r}")
        if not spec.snr:
            raise ConfigError("snr: give --snr or --snr-range")
        if spec.criterion not in ("ser", "ber"):
            raise ConfigError(f"criterion: must be ser or ber, got {spec.criterion!r}")
    if spec.trials < 1:
        raise ConfigError(f"trials: must be >= 1, got {spec.trials}")
    if spec.command == "tables" and spec.format == "csv":
        raise ConfigError("format: tables supports json or text only")
    if spec.command == "simulate":
        if len(spec.mappings) != 1:
            raise ConfigError("mapping: simulate needs exactly one --mapping")
        if len(spec.bitmaps) != 1:
            raise ConfigError("bitmap: simulate needs exactly one --bitmap")
    if spec.command != "sweep" and spec.command != "simulate" and spec.simulate:
        raise ConfigError("simulate: only valid for the sweep command")


# ---------------------------------------------------------------------------
# mapping / bitmap resolution

def _parse_mapping(text: str, scenario: catalog.Scenario) -> tuple[str, SymbolMapping]:
    text = text.strip()
    if re.fullmatch(r"\d+", text):
        try:
            return text, catalog.reference_mapping(scenario.name, int(text))
        except ValueError as err:
            raise ConfigError(f"mapping: {err}") from None
    try:
        points = tuple(int(p) for p in text.replace(",", " ").split())
        mapping = SymbolMapping.from_points(points)
    except ValueError as err:
        raise ConfigError(f"mapping: {err}") from None
    for idx, ref in catalog.REFERENCE_MAPPINGS[scenario.name].items():
        if ref == points:
            return str(idx), mapping
    return "custom", mapping


def _parse_bitmap(text: str, scenario: catalog.Scenario):
    text = text.strip()
    if text in catalog.BITMAP_NAMES:
        labels = catalog.named_bit_labels(scenario.order, text)
        return text, make_bit_mapping(labels, scenario.coupling)
    bits = scenario.order.bit_length() - 1
    parts = [p.strip() for p in text.replace(",", " ").split()]
    if any(len(p) != bits or set(p) - {"0", "1"} for p in parts):
        raise ConfigError(f"bitmap: expected a name {catalog.BITMAP_NAMES} or {scenario.order} "
                          f"{bits}-bit strings, got {text!r}")
    try:
        bitmap = make_bit_mapping(tuple(int(p, 2) for p in parts), scenario.coupling)
    except InvalidLabels as err:
        raise ConfigError(f"bitmap: {err}") from None
    return _bitmap_id(bitmap, scenario), bitmap


def _mapping_id(mapping: SymbolMapping, scenario: catalog.Scenario) -> str:
    """Catalog number whose equivalence class contains the mapping, else 'custom'."""
    canon = canonical_form(mapping.assign, scenario.coupling)
    for idx, ref in catalog.REFERENCE_MAPPINGS[scenario.name].items():
        ref_assign = SymbolMapping.from_points(ref).assign
        if canonical_form(ref_assign, scenario.coupling) == canon:
            return str(idx)
    return "custom"


def _bitmap_id(bitmap, scenario: catalog.Scenario) -> str:
    """Named labeling with the same error profile, else 'custom'."""
    for name in catalog.BITMAP_NAMES:
        labels = catalog.named_bit_labels(scenario.order, name)
        if bit_error_profile(labels, scenario.coupling) == bitmap.profile:
            return name
    return "custom"


def _candidates(spec: ExperimentSpec, scenario: catalog.Scenario) -> list[tuple[str, str | None, Candidate]]:
    """Resolved (mapping_id, bitmap_id, candidate) triples for sweep."""
    mapping_specs = spec.mappings or tuple(
        str(i) for i in sorted(catalog.REFERENCE_MAPPINGS[scenario.name])
    )
    mappings = [_parse_mapping(m, scenario) for m in mapping_specs]
    if spec.criterion == "ser":
        if spec.bitmaps:
            raise ConfigError("bitmap: only used with --criterion ber")
        return [(mid, None, Candidate(mid, mapping)) for mid, mapping in mappings]
    bitmap_specs = spec.bitmaps or ("gray", "binary")
    bitmaps = [_parse_bitmap(b, scenario) for b in bitmap_specs]
    return [
        (mid, bid, Candidate(f"{mid}+{bid}", mapping, bitmap))
        for mid, mapping in mappings
        for bid, bitmap in bitmaps
    ]


# ---------------------------------------------------------------------------
# commands

def _score_fields(spec, scenario, mapping, bitmap, objective):
    bits = scenario.order.bit_length() - 1
    norm = scenario.order if spec.criterion == "ser" else scenario.order * bits
    rec = {
        "mapping_id": _mapping_id(mapping, scenario),
        "mapping_points": list(mapping.points()),
        "objective": objective,
        f"{spec.criterion}_analytic": objective / norm,
    }
    if bitmap is not None:
        rec["bitmap_id"] = _bitmap_id(bitmap, scenario)
        rec["bitmap_labels"] = list(bitmap.label_strings())
    return rec


def cmd_optimize(spec: ExperimentSpec) -> list[dict]:
    scenario = catalog.get_scenario(spec.scenario)
    ma, bc, scheme = scenario.components()
    classes = None
    bitmaps = None
    records = []
    for snr_db in spec.snr:
        model = transition_model(ma, bc, scheme, snr_db)
        if classes is None:
            classes = enumerate_symbol_classes(scenario.order, scenario.coupling, model=model)
        if spec.criterion == "ser":
            result = optimize_ser(model, classes)
        else:
            if bitmaps is None:
                bitmaps = distinct_bit_mappings(scenario.order, scenario.coupling)
            result = optimize_ber(model, classes, bitmaps)
        best = result.best
        record = {"snr_db": snr_db, "criterion": spec.criterion}
        record.update(_score_fields(spec, scenario, best.mapping, best.bitmap, best.objective))
        record["n_ties"] = len(result.ties)
        record["ties"] = [
            _score_fields(spec, scenario, tie.mapping, tie.bitmap, tie.objective)
            for tie in result.ties
        ]
        records.append(record)
    return records


def cmd_sweep(spec: ExperimentSpec) -> list[dict]:
    scenario = catalog.get_scenario(spec.scenario)
    ma, bc, scheme = scenario.components()
    triples = _candidates(spec, scenario)
    points = sweep(ma, bc, scheme, spec.snr, spec.criterion,
                   [cand for _, _, cand in triples], include_optimum=True)
    records = []
    for point_idx, point in enumerate(points):
        for cand_idx, score in enumerate(point.scores):
            mid, bid, cand = triples[cand_idx]
            record = {"snr_db": point.snr_db}
            record.update(_score_fields(spec, scenario, cand.mapping, cand.bitmap, score.objective))
            if spec.simulate:
                sim = run_trials(SimConfig(
                    ma=ma, bc=bc, scheme=scheme, mapping=cand.mapping,
                    bitmap=cand.bitmap or _parse_bitmap("binary", scenario)[1],
                    snr_db=point.snr_db, trials=spec.trials,
                    seed=derived_seed(spec.seed, point_idx, cand_idx),
                ))
                record[f"{spec.criterion}_empirical"] = getattr(sim, spec.criterion)
                record[f"{spec.criterion}_stderr"] = getattr(sim, f"{spec.criterion}_stderr")
                record["trials"] = sim.trials
                record["seed"] = sim.seed
            records.append(record)
        best = point.optimum.best
        record = {"snr_db": point.snr_db}
        record.update(_score_fields(spec, scenario, best.mapping, best.bitmap, best.objective))
        record["mapping_id"] = "optimal"
        record["n_ties"] = len(point.optimum.ties)
        record["ties"] = [
            _score_fields(spec, scenario, tie.mapping, tie.bitmap, tie.objective)
            for tie in point.optimum.ties
        ]
        records.append(record)
    return records


def cmd_simulate(spec: ExperimentSpec) -> list[dict]:
    scenario = catalog.get_scenario(spec.scenario)
    ma, bc, scheme = scenario.components()
    mid, mapping = _parse_mapping(spec.mappings[0], scenario)
    bid, bitmap = _parse_bitmap(spec.bitmaps[0], scenario)
    template = SimConfig(ma=ma, bc=bc, scheme=scheme, mapping=mapping, bitmap=bitmap,
                         snr_db=0.0, trials=spec.trials, seed=spec.seed)
    results = sweep_sim(template, spec.snr)
    records = []
    for snr_db, sim in zip(spec.snr, results):
        model = transition_model(ma, bc, scheme, snr_db)
        from .analytic import bit_error_rate, symbol_error_rate

        records.append({
            "snr_db": snr_db,
            "mapping_id": mid,
            "mapping_points": list(mapping.points()),
            "bitmap_id": bid,
            "bitmap_labels": list(bitmap.label_strings()),
            "trials": sim.trials,
            "seed": sim.seed,
            "ser_analytic": symbol_error_rate(mapping, model),
            "ser_empirical": sim.ser,
            "ser_stderr": sim.ser_stderr,
            "ber_analytic": bit_error_rate(mapping, bitmap, model),
            "ber_empirical": sim.ber,
            "ber_stderr": sim.ber_stderr,
        })
    return records


def cmd_tables() -> dict:
    counts_bits = {}
    counts_classes = {}
    for name, scen in catalog.SCENARIOS.items():
        counts_bits[name] = len(distinct_bit_mappings(scen.order, scen.coupling))
        counts_classes[name] = len(enumerate_symbol_classes(scen.order, scen.coupling))
    profiles = {
        "additive4": {
            name: list(bit_error_profile(catalog.named_bit_labels(4, name), "additive"))
            for name in catalog.BITMAP_NAMES
        },
        "xor4": {
            name: list(bit_error_profile(catalog.named_bit_labels(4, name), "xor"))
            for name in catalog.BITMAP_NAMES
        },
    }
    matrices = {
        name: [list(row) for row in profile_matrix(
            bit_error_profile(catalog.named_bit_labels(4, name), "additive"), "additive")]
        for name in ("gray", "binary")
    }
    return {
        "reference_symbol_mappings": {
            scenario: {str(i): list(points) for i, points in table.items()}
            for scenario, table in catalog.REFERENCE_MAPPINGS.items()
        },
        "named_bit_labelings": {
            str(order): {
                name: [format(lbl, f"0{order.bit_length() - 1}b")
                       for lbl in catalog.named_bit_labels(order, name)]
                for name in catalog.BITMAP_NAMES
            }
            for order in (4, 8)
        },
        "bit_error_profiles": profiles,
        "bit_error_matrices_uniform4": matrices,
        "distinct_bit_mappings": counts_bits,
        "symbol_mapping_classes": counts_classes,
    }


def _render_tables_text(payload: dict) -> str:
    out = io.StringIO()
    out.write("Reference relay symbol mappings (broadcast point per code value)\n")
    for scenario, table in payload["reference_symbol_mappings"].items():
        for idx, points in table.items():
            out.write(f"  {scenario:<12} {idx}) {' '.join(f'{p:>3}' for p in points)}\n")
    out.write("\nNamed bit labelings\n")
    for order, table in payload["named_bit_labelings"].items():
        for name, labels in table.items():
            out.write(f"  {order}-PAM {name:<7} {' '.join(labels)}\n")
    out.write("\nBit-error profiles (4-PAM)\n")
    for coupling, table in payload["bit_error_profiles"].items():
        for name, profile in table.items():
            out.write(f"  {coupling:<10} {name:<7} {profile}\n")
    out.write("\nBit-error matrices, uniform 4-PAM\n")
    for name, rows in payload["bit_error_matrices_uniform4"].items():
        out.write(f"  {name}:\n")
        for row in rows:
            out.write(f"    {' '.join(f'{v:4.1f}' for v in row)}\n")
    out.write("\nDistinct bit mappings per scenario\n")
    for name, count in payload["distinct_bit_mappings"].items():
        out.write(f"  {name:<12} {count}\n")
    out.write("\nSymbol-mapping equivalence classes per scenario\n")
    for name, count in payload["symbol_mapping_classes"].items():
        out.write(f"  {name:<12} {count}\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# output

def _csv_value(value):
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    if value is None:
        return ""
    return value


def records_to_csv(records: list[dict]) -> str:
    fieldnames: list[str] = []
    for rec in records:
        for key in rec:
            if key != "ties" and key not in fieldnames:
                fieldnames.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow({k: _csv_value(v) for k, v in rec.items() if k != "ties"})
    return buf.getvalue()


def load_records(text: str, fmt: str):
    """Re-parse an emitted report; inverse of the JSON/CSV writers."""
    if fmt == "json":
        return json.loads(text)["results"]
    records = []
    for row in csv.DictReader(io.StringIO(text)):
        parsed = {}
        for key, value in row.items():
            if value == "":
                parsed[key] = None
            elif key in ("mapping_points",):
                parsed[key] = [int(p) for p in value.split()]
            elif key in ("bitmap_labels",):
                parsed[key] = value.split()
            else:
                try:
                    parsed[key] = json.loads(value)
                except json.JSONDecodeError:
                    parsed[key] = value
        records.append(parsed)
    return records


def _emit(spec: ExperimentSpec, records, payload=None) -> None:
    if spec.format == "json":
        body = {"schema_version": SCHEMA_VERSION, "spec": asdict(spec)}
        body["results"] = payload if payload is not None else records
        text = json.dumps(body, indent=2) + "\n"
    elif spec.format == "csv":
        text = records_to_csv(records)
    else:
        text = _render_tables_text(payload)
    if spec.out:
        with open(spec.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        spec = resolve_spec(args)
        if spec.command == "tables":
            payload = cmd_tables()
            _emit(spec, [], payload)
        elif spec.command == "optimize":
            _emit(spec, cmd_optimize(spec))
        elif spec.command == "simulate":
            _emit(spec, cmd_simulate(spec))
        else:
            records = cmd_sweep(spec)
            _emit(spec, records)
            if spec.plot:
                from .plotting import save_sweep_figure

                save_sweep_figure(records, spec.criterion, spec.plot,
                                  title=f"{spec.scenario} ({spec.criterion.upper()})")
    except (ConfigError, AmbiguityError, InvalidOrder, InvalidLabels, InvalidConfig,
            NoSignChange) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except OrbitInconsistency as err:
        print(f"internal verification failure: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
