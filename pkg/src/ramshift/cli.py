"""Deterministic command-line surface over the library.

Commands: datum, automaton, graph, product-graph, verify-ramanujan,
bass-ihara, subshift-check, mixing, tiles.  Formats: JSON for reports and
datum files, DOT for graphs and automata, CSV for spectra and mixing
tables, SVG for tiles.

Every output embeds the resolved run configuration for provenance (plus a
timestamp unless --no-timestamp is given), files are written atomically,
and nothing is randomized, so reruns with the same flags are byte-identical
modulo the timestamp.  No color is ever emitted.

Exit codes: 0 all checks pass, 1 verified violation, 2 usage or input
error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from . import graphs, mealy, spectral, subshift, vhdatum
from .ffield import make_field
from .vhdatum import atomic_write

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _config_dict(args: argparse.Namespace) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None}
    if not args.no_timestamp:
        cfg["generated_at"] = datetime.now(timezone.utc).isoformat()
    return cfg


def _emit(args, text: str) -> None:
    if args.out:
        atomic_write(args.out, text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload: dict) -> None:
    payload = dict(payload)
    payload["config"] = _config_dict(args)
    _emit(args, json.dumps(payload, sort_keys=True, indent=1, default=str) + "\n")


def _header(args) -> str:
    return f"config: {json.dumps(_config_dict(args), sort_keys=True, default=str)}"


def _datum_from_args(args) -> vhdatum.VHDatum:
    if getattr(args, "datum", None):
        return vhdatum.read_datum(args.datum)
    spec = make_field(args.p, args.e)
    return vhdatum.build_quaternionic_datum(spec, args.tau, args.sigma)


def _parse_levels(text: str) -> list[int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


# ---------------------------------------------------------------------------
# commands


def cmd_datum(args) -> int:
    datum = _datum_from_args(args)
    validation = vhdatum.validate_datum(datum)
    violations = list(validation.violations)
    relations_ok = None
    if datum.is_arithmetic():
        relations = vhdatum.verify_relations(datum)
        relations_ok = relations.ok
        violations += relations.violations
    if args.write:
        vhdatum.write_datum(datum, args.write)
    payload = {
        "q": datum.field.q if datum.is_arithmetic() else None,
        "n_V": len(datum.V),
        "n_H": len(datum.H),
        "n_R": len(datum.R),
        "valid": validation.ok,
        "relations_verified": relations_ok,
        "violations": violations,
        "written": args.write,
    }
    _emit_json(args, payload)
    if violations:
        print("datum failed verification", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_automaton(args) -> int:
    datum = _datum_from_args(args)
    m = mealy.from_datum(datum)
    if args.side == "B":
        m = mealy.dual(m)
    _emit(args, mealy.mealy_to_dot(m, header=_header(args)))
    return EXIT_OK


def cmd_graph(args) -> int:
    datum = _datum_from_args(args)
    graph = graphs.level_graph(datum, args.side, args.level)
    if args.format == "dot":
        _emit(args, graphs.ugraph_to_dot(graph, header=_header(args)))
    else:
        payload = graphs.ugraph_to_json_dict(graph)
        _emit_json(args, payload)
    return EXIT_OK


def cmd_product_graph(args) -> int:
    spec = make_field(args.p, args.e)
    s0 = [int(x) for x in args.s0.split(",")]
    levels = tuple(int(x) for x in args.levels.split(","))
    graph = graphs.product_level_graph(spec, s0, args.tau, levels)
    if args.format == "dot":
        _emit(args, graphs.ugraph_to_dot(graph, header=_header(args)))
    else:
        payload = graphs.ugraph_to_json_dict(graph)
        structure = graphs.structure_predicates(graph)
        payload["connected"] = structure.connected
        payload["bipartite"] = structure.bipartite
        payload["regular_degree"] = structure.regular_degree
        _emit_json(args, payload)
    return EXIT_OK


def _check_one_graph(graph, tol: float, dense_cap: int) -> tuple[dict, object]:
    if graph.n_vertices() > dense_cap:
        return {"skipped": True, "n_vertices": graph.n_vertices()}, None
    structure = graphs.structure_predicates(graph)
    report = spectral.ramanujan_check(graph, tol=tol)
    out = spectral.spectral_report_to_dict(report)
    out.update(
        {
            "skipped": False,
            "connected": structure.connected,
            "non_bipartite": not structure.bipartite,
        }
    )
    return out, report


def cmd_verify_ramanujan(args) -> int:
    verdicts = []
    spectra = []
    violated = False
    if args.graph_json:
        with open(args.graph_json, "r", encoding="utf-8") as fh:
            graph = graphs.ugraph_from_json(fh.read())
        entry, full = _check_one_graph(graph, args.tol, args.dense_cap)
        entry["source"] = args.graph_json
        if full is not None:
            spectra.append((args.graph_json, full))
            if not entry["ramanujan"]:
                offending = max(
                    (x for x in full.eigenvalues
                     if abs(abs(x) - entry["second_modulus"]) <= args.tol),
                    key=abs,
                )
                entry["offending_eigenvalue"] = float(offending)
                violated = True
        verdicts.append(entry)
    else:
        datum = _datum_from_args(args)
        for level in _parse_levels(args.levels):
            for side in ("A", "B") if args.side == "both" else (args.side,):
                graph = graphs.level_graph(datum, side, level)
                entry, full = _check_one_graph(graph, args.tol, args.dense_cap)
                entry.update({"side": side, "level": level})
                if full is not None:
                    spectra.append((f"{side}_{level}", full))
                    if not entry["ramanujan"]:
                        violated = True
                verdicts.append(entry)
    if args.format == "csv":
        blocks = [f"# {name}\n{spectral.spectral_report_to_csv(rep)}" for name, rep in spectra]
        _emit(args, f"# {_header(args)}\n" + "".join(blocks))
    else:
        _emit_json(args, {"verdicts": verdicts, "all_pass": not violated})
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_bass_ihara(args) -> int:
    datum = _datum_from_args(args)
    graph = graphs.level_graph(datum, args.side, args.level)
    report = spectral.nb_transfer_report(graph)
    payload = {
        "n_darts": report.n_darts,
        "d": report.d,
        "max_dist_direct_to_transfer": report.max_dist_direct_to_transfer,
        "max_dist_transfer_to_direct": report.max_dist_transfer_to_direct,
        "max_modulus_defect": report.max_modulus_defect,
        "agrees": report.agrees(args.tol),
    }
    _emit_json(args, payload)
    return EXIT_OK if report.agrees(args.tol) else EXIT_VIOLATION


def cmd_subshift_check(args) -> int:
    datum = _datum_from_args(args)
    shift = subshift.build_xd(datum)
    report = subshift.regularity_report(shift)
    payload = {
        "s": report.n_symbols,
        "degree": report.degree,
        "consistent": report.consistent,
        "products_01": report.products_01,
        "commute_exactly": report.commute_exactly,
        "uniquely_extendable": report.uniquely_extendable,
    }
    _emit_json(args, payload)
    ok = report.degree is not None and report.uniquely_extendable
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_mixing(args) -> int:
    datum = _datum_from_args(args)
    table = subshift.mixing_table(datum, args.k, args.max_n, direction=args.direction)
    _emit(args, subshift.mixing_table_to_csv(table, header=_header(args)))
    return EXIT_OK if table.all_ok else EXIT_VIOLATION


def cmd_tiles(args) -> int:
    datum = _datum_from_args(args)
    ts = vhdatum.wang_tiles(datum)
    _emit(args, vhdatum.tiles_to_svg(ts, header=_header(args)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_datum_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--datum", help="read the datum from a JSON file instead of building it")
    p.add_argument("--p", type=int, default=3, help="odd prime characteristic")
    p.add_argument("--e", type=int, default=1, help="extension degree (q = p^e)")
    p.add_argument("--tau", type=int, default=1, help="first place (canonical encoding)")
    p.add_argument("--sigma", type=int, default=2, help="second place")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp for byte-identical reruns")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramshift",
        description="quaternionic VH-data, Mealy lifts, Ramanujan level graphs, and regular shifts",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("datum", help="build, validate, and verify a quaternionic datum")
    _add_datum_args(p)
    p.add_argument("--write", help="also write the canonical datum file here")
    _add_common(p)
    p.set_defaults(func=cmd_datum)

    p = sub.add_parser("automaton", help="export the datum automaton as DOT")
    _add_datum_args(p)
    p.add_argument("--side", choices=("A", "B"), default="A", help="A = datum automaton, B = its dual")
    _add_common(p)
    p.set_defaults(func=cmd_automaton)

    p = sub.add_parser("graph", help="export a level graph")
    _add_datum_args(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--side", choices=("A", "B"), default="A")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    _add_common(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("product-graph", help="export a multi-dimensional level graph")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--s0", required=True, help="comma-separated places, e.g. 1,2,3")
    p.add_argument("--tau", type=int, required=True)
    p.add_argument("--levels", required=True, help="comma-separated level tuple, one per non-tau place")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    _add_common(p)
    p.set_defaults(func=cmd_product_graph)

    p = sub.add_parser("verify-ramanujan", help="spectral verification campaign over level graphs")
    _add_datum_args(p)
    p.add_argument("--levels", default="1:4", help="range lo:hi or comma list")
    p.add_argument("--side", choices=("A", "B", "both"), default="both")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--dense-cap", type=int, default=spectral.DENSE_EIG_LIMIT,
                   help="skip levels with more vertices than this")
    p.add_argument("--graph-json", help="verify a single graph from a JSON file instead")
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   help="json verdicts or per-graph spectrum CSV")
    _add_common(p)
    p.set_defaults(func=cmd_verify_ramanujan)

    p = sub.add_parser("bass-ihara", help="compare direct dart spectra with the transferred set")
    _add_datum_args(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--side", choices=("A", "B"), default="A")
    p.add_argument("--tol", type=float, default=1e-6)
    _add_common(p)
    p.set_defaults(func=cmd_bass_ihara)

    p = sub.add_parser("subshift-check", help="regularity / consistency / extendability report")
    _add_datum_args(p)
    _add_common(p)
    p.set_defaults(func=cmd_subshift_check)

    p = sub.add_parser("mixing", help="exact correlation-decay table as CSV")
    _add_datum_args(p)
    p.add_argument("--k", type=int, default=1, help="strip height")
    p.add_argument("--max-n", type=int, default=20)
    p.add_argument("--direction", choices=("horizontal", "vertical"), default="horizontal")
    _add_common(p)
    p.set_defaults(func=cmd_mixing)

    p = sub.add_parser("tiles", help="export the Wang tileset as SVG")
    _add_datum_args(p)
    _add_common(p)
    p.set_defaults(func=cmd_tiles)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except spectral.SizeCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
