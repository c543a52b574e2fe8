"""Command-line front end: ``sweep``, ``chain``, ``oracle`` and ``dump-state``.

Settings resolve as defaults < ``--config`` JSON file < explicit flags.  CSV
output gets a ``<out>.manifest.json`` sidecar; JSON output embeds the
manifest.  Exit codes: 0 ok, 2 invalid config, 3 I/O failure, 4 numerical
failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .chain import SIDES, ChainConfig, run_chain
from .linalg import ConvergenceError
from .qstate import InvalidStateError, initial_state
from .swap import (
    Z_OUTCOMES,
    ConfigError,
    SwapConfig,
    UnderflowError,
    best_of,
    circuit_swap,
    iter_swaps,
    phi_plus_fidelity,
    zeno_swap,
)

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_NUMERIC = 0, 2, 3, 4
COMMANDS = ("sweep", "chain", "oracle", "dump-state")
FORMATS = ("csv", "json")
SIG_DIGITS = 12


@dataclass
class RunManifest:
    command: str = "sweep"
    theta: float = math.pi / 180
    j1: str = "11"
    n: int | None = None
    n_max: int = 100
    stations: int = 100
    outcome: str = "best"
    fresh_side: str = "left"
    format: str = "csv"
    out: str | None = None
    dump_matrices: bool = False

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunManifest":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown manifest keys: {sorted(unknown)}")
        return cls(**data)

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.fresh_side not in SIDES:
            raise ConfigError(f"fresh side must be one of {SIDES}")
        self.swap_config()
        if self.command == "chain":
            self.chain_config()

    def swap_config(self) -> SwapConfig:
        return SwapConfig(
            theta=float(self.theta),
            threshold_outcome=_parse_bits(self.j1, "--j1"),
            n_iterations=self.n,
            n_max=self.n_max,
            z_outcome=None if self.outcome == "best" else _parse_bits(self.outcome, "--outcome"),
        )

    def chain_config(self) -> ChainConfig:
        return ChainConfig(
            stations=self.stations,
            n_max=self.n_max,
            swap_cfg=self.swap_config(),
            fresh_pair_side=self.fresh_side,
        )


def _parse_bits(text, flag: str) -> tuple[int, int]:
    text = str(text)
    if len(text) != 2 or any(ch not in "01" for ch in text):
        raise ConfigError(f"{flag} expects two bits such as 11, got {text!r}")
    return int(text[0]), int(text[1])


def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, f".{SIG_DIGITS}g")
    return str(x)


def _num(x: float) -> float:
    return float(format(x, f".{SIG_DIGITS}g"))


def matrix_to_json(m) -> list:
    return [[[_num(v.real), _num(v.imag)] for v in row] for row in m]


def _outcome_str(o) -> str:
    return f"{o[0]}{o[1]}"


# Each command returns (columns, rows, summary lines, extra json blocks).

def cmd_sweep(manifest: RunManifest):
    cfg = manifest.swap_config()
    results = list(iter_swaps(initial_state(), cfg, manifest.n or cfg.n_max))
    if manifest.n is not None:
        results = results[-1:]
    best = best_of(results)
    columns = ["n", "negativity", "best_bell_fidelity", "cumulative_probability", "z_outcome"]
    rows = [
        [r.n_used, r.negativity, r.best_bell_fidelity, r.cumulative_j0_probability, _outcome_str(r.z_outcome)]
        for r in results
    ]
    summary = [
        f"best n = {best.n_used}  negativity = {fmt(best.negativity)}  "
        f"best_bell_fidelity = {fmt(best.best_bell_fidelity)}  z_outcome = {_outcome_str(best.z_outcome)}"
    ]
    return columns, rows, summary, None


def cmd_chain(manifest: RunManifest):
    records = run_chain(manifest.chain_config())
    columns = [
        "station", "n_used", "z_outcome", "negativity", "best_bell_fidelity",
        "closest_bell", "input_negativity",
    ]
    rows = [
        [rec.station, rec.result.n_used, _outcome_str(rec.result.z_outcome), rec.result.negativity,
         rec.result.best_bell_fidelity, rec.result.closest_bell, rec.input_negativity]
        for rec in records
    ]
    negs = [rec.result.negativity for rec in records]
    summary = [f"stations = {len(records)}  min negativity = {fmt(min(negs))}  max negativity = {fmt(max(negs))}"]
    matrices = None
    if manifest.dump_matrices:
        matrices = [matrix_to_json(rec.result.pair_state.matrix) for rec in records]
    return columns, rows, summary, matrices


def cmd_oracle(manifest: RunManifest):
    rho = initial_state()
    columns = ["z_outcome", "probability", "phi_plus_fidelity", "negativity"]
    rows = []
    for outcome in Z_OUTCOMES:
        r = circuit_swap(rho, outcome)
        rows.append([_outcome_str(outcome), r.z_outcome_probability, phi_plus_fidelity(r), r.negativity])
    zeno = zeno_swap(rho, manifest.swap_config())
    gap = abs(rows[0][3] - zeno.negativity)
    summary = [
        f"circuit min fidelity = {fmt(min(row[2] for row in rows))}",
        f"zeno n = {zeno.n_used}  negativity = {fmt(zeno.negativity)}  "
        f"best_bell_fidelity = {fmt(zeno.best_bell_fidelity)}  negativity gap = {fmt(gap)}",
    ]
    return columns, rows, summary, None


def cmd_dump_state(manifest: RunManifest):
    r = zeno_swap(initial_state(), manifest.swap_config())
    columns = ["row", "col", "re", "im"]
    m = r.pair_state.matrix
    rows = [[i, j, float(m[i, j].real), float(m[i, j].imag)] for i in range(4) for j in range(4)]
    summary = [
        f"n = {r.n_used}  z_outcome = {_outcome_str(r.z_outcome)}  negativity = {fmt(r.negativity)}  "
        f"closest_bell = {r.closest_bell}  fidelity = {fmt(r.best_bell_fidelity)}"
    ]
    return columns, rows, summary, [matrix_to_json(m)]


HANDLERS = {
    "sweep": cmd_sweep,
    "chain": cmd_chain,
    "oracle": cmd_oracle,
    "dump-state": cmd_dump_state,
}


def render_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def render_json(manifest, columns, rows, matrices) -> str:
    records = []
    for k, row in enumerate(rows):
        rec = {c: (_num(v) if isinstance(v, float) else v) for c, v in zip(columns, row)}
        if matrices is not None and manifest.command == "chain":
            rec["matrix"] = matrices[k]
        records.append(rec)
    doc = {"manifest": manifest.to_dict(), "records": records}
    if matrices is not None and manifest.command == "dump-state":
        doc["matrix"] = matrices[0]
    return json.dumps(doc, indent=2) + "\n"


def execute(manifest: RunManifest, stdout=None) -> int:
    stdout = stdout or sys.stdout
    columns, rows, summary, matrices = HANDLERS[manifest.command](manifest)
    if manifest.format == "json":
        body = render_json(manifest, columns, rows, matrices)
    else:
        body = render_csv(columns, rows)

    if manifest.out is None:
        stdout.write(body)
        for line in summary:
            print(line, file=sys.stderr)
        return EXIT_OK

    out = Path(manifest.out)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(body)
    if manifest.format == "csv":
        sidecar = out.with_name(out.name + ".manifest.json")
        sidecar.write_text(json.dumps(manifest.to_dict(), indent=2) + "\n", encoding="utf-8")
        if matrices is not None:
            dump = out.with_name(out.name + ".matrices.json")
            dump.write_text(json.dumps(matrices, indent=2) + "\n", encoding="utf-8")
    for line in summary:
        print(line, file=stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zeno-repeater",
        description="Zeno-dynamics entanglement swapping and repeater chains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON manifest with default settings")
        p.add_argument("--theta", type=float, help="rotation angle in radians")
        p.add_argument("--j1", help="threshold projector bits, e.g. 11")
        group = p.add_mutually_exclusive_group()
        group.add_argument("--n", type=int, help="fixed number of rotate-measure rounds")
        group.add_argument("--n-max", type=int, dest="n_max", help="search n over [1, N]")
        p.add_argument("--outcome", help="z outcome bits (e.g. 00) or 'best'")
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--out", help="output path (stdout when omitted)")
        if name == "chain":
            p.add_argument("--stations", type=int)
            p.add_argument("--fresh-side", dest="fresh_side", choices=SIDES)
            p.add_argument("--dump-matrices", dest="dump_matrices", action="store_true", default=None)
    return parser


def resolve_manifest(args: argparse.Namespace) -> RunManifest:
    data = RunManifest().to_dict()
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        loaded.pop("command", None)
        data.update(RunManifest.from_dict({**RunManifest().to_dict(), **loaded}).to_dict())
    for key, value in vars(args).items():
        if key == "config" or value is None:
            continue
        data[key] = value
    if data["n"] is not None:
        # an explicit fixed n overrides any search bound
        data["n_max"] = max(data["n_max"], data["n"])
    manifest = RunManifest.from_dict(data)
    manifest.validate()
    return manifest


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        manifest = resolve_manifest(args)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return execute(manifest)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UnderflowError, ConvergenceError, InvalidStateError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
