import argparse
import json
import os
import sys
from pathlib import Path
from typing import Callable, Optional

from dotenv import dotenv_values, find_dotenv, load_dotenv

from toral_types.census import CensusInput, census_tsv, run_census
from toral_types.defaults import (
    DEFAULT_FIGURE_WINDOW,
    DEFAULT_ORACLE_BOX,
    DEFAULT_PRECISION,
    DEFAULT_Q,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_STABILIZER_SAMPLES,
    OUTPUT_DIR_ENV,
)
from toral_types.exceptions import (
    ConfigurationError,
    ContractViolation,
    CrossValidationError,
    InternalError,
    ToralTypesError,
)
from toral_types.figure import render_figure
from toral_types.helper import (
    format_rational,
    get_output_basename,
    parse_point,
    parse_rational,
    write_output,
)
from toral_types.log import logger
from toral_types.oracle import (
    FixedRegionCheck,
    OracleReport,
    RemarkOrbitCheck,
    StabilizerCheck,
    printed_pattern_check,
)
from toral_types.roots import Family, build_root_datum, fundamental_alcove_vertices
from toral_types.torus import TorusSpec, format_spec, parse_spec

load_dotenv(find_dotenv(usecwd=True))

ORACLE_CHECKS = ("remark-orbit", "fixed-region", "stabilizer", "printed-patterns")
FORMATS = ("json", "tsv", "svg")


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="toral-types",
        description="Fixed regions, type censuses and matrix checks for toral supercuspidal data",
    )
    parser.add_argument(
        "--config",
        type=Path,
        default=None,
        help="key=value file supplying defaults for any option; explicit flags win",
    )
    parser.add_argument("--format", choices=FORMATS, default=None, help="Output format")
    parser.add_argument("-o", "--output", type=Path, default=None, help="Output file")
    parser.add_argument(
        "--output-dir",
        type=Path,
        default=None,
        help=f"Directory for generated file names (defaults to ${OUTPUT_DIR_ENV})",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    apartment = subparsers.add_parser("apartment", help="Alcove data of a root system")
    apartment.add_argument("family", help="Root system family, A or C")
    apartment.add_argument("rank", type=int, help="Rank r: C r is Sp_2r, A r is SL_(r+1)")

    census = subparsers.add_parser("census", help="Type census of a torus")
    census.add_argument("spec", nargs="+", help="Torus factors, e.g. u½ r^3 u0")
    census.add_argument("--s0", default=None, help="Half the depth of the character, as p/q")

    figure = subparsers.add_parser("figure", help="SVG picture of the Sp_4 apartment")
    figure.add_argument("spec", nargs="+", help="Torus factors with n = 2")
    figure.add_argument("--s0", default=None, help="Half the depth of the character, as p/q")
    figure.add_argument("--window", default=None, help="Drawing window lo,hi on both axes")

    oracle = subparsers.add_parser("oracle", help="Matrix-level checks over F_q((t))")
    oracle.add_argument("check", choices=ORACLE_CHECKS)
    oracle.add_argument("spec", nargs="*", help="Torus factors (fixed-region only)")
    oracle.add_argument("--q", type=int, default=None, help="Residue field size, an odd prime")
    oracle.add_argument("--N", type=int, default=None, help="Truncation order of the series")
    oracle.add_argument("--samples", type=int, default=None)
    oracle.add_argument("--seed", type=int, default=None)
    oracle.add_argument("--x", default=None, help="Point of the closed alcove, e.g. 1/4,1/4")
    oracle.add_argument("--s", default=None, help="Depth s of the filtration subgroup")
    oracle.add_argument("--box", type=int, default=None, help="Half-width of the vertex box")
    return parser


def load_config(path: Optional[Path]) -> dict:
    """Flag defaults from a key=value file; keys use flag names without dashes."""
    if path is None:
        return {}
    if not path.is_file():
        raise ConfigurationError(f"Config file {path} does not exist.")
    return {
        key.strip().lstrip("-").replace("-", "_").lower(): value
        for key, value in dotenv_values(path).items()
        if value is not None
    }


class _Options:
    """Command-line values, falling back to the config file, then to defaults."""

    def __init__(self, args: argparse.Namespace, config: dict):
        self.args = args
        self.config = config

    def get(self, name: str, default=None, convert: Callable = lambda v: v):
        value = getattr(self.args, name, None)
        if value is not None:
            return value
        if name.lower() in self.config:
            try:
                return convert(self.config[name.lower()])
            except ValueError as e:
                raise ConfigurationError(f"Config value for {name} is invalid: {e}") from None
        return default


def _spec(args: argparse.Namespace) -> TorusSpec:
    if not args.spec:
        raise ContractViolation(f"The {args.command} command needs a torus description.")
    return parse_spec(" ".join(args.spec))


def _dumps(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def cmd_apartment(family: str, rank: int, fmt: str = "json") -> str:
    """Alcove vertices, simple and affine simple roots."""
    family = str(family).upper()
    n = rank + 1 if family == Family.A.value else rank
    rd = build_root_datum(family, n)
    vertices = fundamental_alcove_vertices(rd)
    if fmt == "tsv":
        lines = ["vertex_type\tcoordinates"]
        lines += [f"v{i}\t" + ",".join(format_rational(c) for c in v) for i, v in enumerate(vertices)]
        return "\n".join(lines) + "\n"
    if fmt != "json":
        raise ContractViolation(f"The apartment command writes json or tsv, not {fmt}.")
    return _dumps(
        {
            "family": rd.family.value,
            "rank": rd.rank,
            "coordinates": rd.n,
            "vertices": [
                {"type": f"v{i}", "coordinates": [format_rational(c) for c in v]}
                for i, v in enumerate(vertices)
            ],
            "simple_roots": [list(alpha) for alpha in rd.simple_roots],
            "highest_root": list(rd.highest_root),
            "affine_simple_roots": [str(psi) for psi in rd.affine_simple_roots],
        }
    )


def cmd_census(spec: TorusSpec, s0, fmt: str = "json") -> str:
    report = run_census(CensusInput(spec, parse_rational(s0)))
    if fmt == "tsv":
        return census_tsv(report)
    if fmt != "json":
        raise ContractViolation(f"The census command writes json or tsv, not {fmt}.")
    return _dumps(report.to_json())


def cmd_figure(spec: TorusSpec, s0, window=DEFAULT_FIGURE_WINDOW) -> str:
    return render_figure(spec, parse_rational(s0), window)


def cmd_oracle(check: str, options: _Options, spec: Optional[TorusSpec] = None) -> OracleReport:
    """Run a named check.

    Raises:
        CrossValidationError: if the verdict is false.
    """
    if check == "printed-patterns":
        report = printed_pattern_check()
    else:
        kwargs = dict(
            q=options.get("q", DEFAULT_Q, int),
            prec=options.get("N", DEFAULT_PRECISION, int),
            seed=options.get("seed", DEFAULT_SEED, int),
        )
        if check == "stabilizer":
            x = options.get("x")
            if x is None:
                raise ContractViolation("The stabilizer check needs a point --x such as 1/4,1/4.")
            report = StabilizerCheck(
                parse_point(x),
                parse_rational(options.get("s", "0")),
                samples=options.get("samples", DEFAULT_STABILIZER_SAMPLES, int),
                **kwargs,
            ).run()
        else:
            kwargs["samples"] = options.get("samples", DEFAULT_SAMPLES, int)
            if check == "remark-orbit":
                report = RemarkOrbitCheck(**kwargs).run()
            else:
                if spec is None:
                    raise ContractViolation("The fixed-region check needs a torus description.")
                box = options.get("box", DEFAULT_ORACLE_BOX, int)
                report = FixedRegionCheck(spec, box=box, **kwargs).run()
    if not report.verdict:
        raise CrossValidationError(
            f"Oracle check {report.check} contradicts the closed form: " + "; ".join(report.witnesses[:3]),
            report,
        )
    return report


def _emit(text: str, args: argparse.Namespace, options: _Options, params: dict, suffix: str):
    if args.output is not None:
        write_output(text, args.output)
        return
    output_dir = options.get("output_dir", None, Path) or os.getenv(OUTPUT_DIR_ENV)
    if output_dir:
        name = get_output_basename(params, args.command) + suffix
        write_output(text, Path(output_dir) / name)
        return
    sys.stdout.write(text)


def _run(args: argparse.Namespace) -> int:
    options = _Options(args, load_config(args.config))
    params = {key: value for key, value in vars(args).items() if key not in ("config", "output", "output_dir")}

    if args.command == "apartment":
        fmt = options.get("format", "json")
        text = cmd_apartment(args.family, args.rank, fmt)
    elif args.command == "census":
        fmt = options.get("format", "json")
        s0 = options.get("s0")
        if s0 is None:
            raise ContractViolation("The census command needs --s0.")
        spec = _spec(args)
        params.update(spec=format_spec(spec), s0=str(s0))
        text = cmd_census(spec, s0, fmt)
    elif args.command == "figure":
        fmt = options.get("format", "svg")
        if fmt != "svg":
            raise ContractViolation(f"The figure command writes svg, not {fmt}.")
        spec = _spec(args)
        window = options.get("window")
        window = tuple(parse_point(window)) if window else DEFAULT_FIGURE_WINDOW
        if len(window) != 2:
            raise ContractViolation(f"The window needs two values lo,hi, got {len(window)}.")
        s0 = options.get("s0", "1/10")
        params.update(spec=format_spec(spec), s0=str(s0), window=[str(w) for w in window])
        text = cmd_figure(spec, s0, window)
    else:
        fmt = options.get("format", "json")
        if fmt != "json":
            raise ContractViolation(f"The oracle command writes json, not {fmt}.")
        spec = _spec(args) if args.spec else None
        try:
            report = cmd_oracle(args.check, options, spec)
        except CrossValidationError as e:
            _emit(_dumps(e.report.to_json()), args, options, params, ".json")
            raise
        text = _dumps(report.to_json())

    _emit(text, args, options, params, "." + fmt)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = _run(args)
    except (CrossValidationError, InternalError) as e:
        logger.error(str(e))
        code = 2
    except ToralTypesError as e:
        logger.error(str(e))
        code = 1
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
