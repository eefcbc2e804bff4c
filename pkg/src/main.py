"""Command-line entry point for the RIO-QED simulator."""

import argparse
import sys
from collections.abc import Callable, Sequence

from pydantic import ValidationError

from src.core.config import Settings, load_settings
from src.core.errors import RioError
from src.core.logging import setup_logging
from src.schemas.config import RunConfig
from src.services.campaigns import EXIT_CONFIG_ERROR, EXIT_SUCCESS, CampaignOutcome, CampaignService
from src.services.report_writer import export_schemas, write_report

COMMANDS: dict[str, Callable[[CampaignService], CampaignOutcome]] = {
    "verify-protocol": CampaignService.verify_protocol,
    "verify-decompositions": CampaignService.verify_decompositions,
    "physical-gates": CampaignService.physical_gates,
    "fidelity-sweep": CampaignService.fidelity_sweep,
    "timing-report": CampaignService.timing_report,
}


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="KEY=value settings file")
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int, help="Random (xi, t) samples per operator")
    common.add_argument("--tolerance", type=float, help="Protocol residual tolerance")
    common.add_argument("--gate-tolerance", type=float, help="Physical gate residual tolerance")
    common.add_argument("--g-khz", type=float, help="Coupling g = 2*pi*G_KHZ kHz")
    common.add_argument("--delta-over-g", type=float)
    common.add_argument("--q-factor", type=float)
    common.add_argument("--cavity-ghz", type=float)
    common.add_argument("--radiative-time", type=float, help="Radiative time in seconds")
    common.add_argument("--pulse-time", type=float, help="Classical pulse time in seconds")
    common.add_argument("--excitation-probability", type=float)
    common.add_argument("--offset", type=float, help="Entry offset as a fraction of the interaction time")
    common.add_argument("--early-atom", type=int, choices=[1, 2])
    common.add_argument("--grid-step", type=float)
    common.add_argument("--sweep-phase", type=float, help="Common phase of t_m in radians")
    common.add_argument("--format", dest="output_format", choices=["json", "csv"])
    common.add_argument("--out", help="Report path (stdout when omitted)")
    common.add_argument("--verbose", action="store_true", default=None, help="Include gate matrices")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    common.add_argument("--log-format", choices=["json", "text"])
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rio-qed",
        description="Remote implementation of two-qubit operations: ideal protocol and cavity-QED realization",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_options()
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])

    export_env = sub.add_parser("export-env", help="Write a settings template with default values")
    export_env.add_argument("--out", default=".env.generated")
    export_schema = sub.add_parser("export-schemas", help="Write JSON schemas of every report")
    export_schema.add_argument("--out", default="docs/schemas")
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    settings = load_settings(args.config)
    updates = {k: getattr(args, k) for k in ("log_level", "log_format") if getattr(args, k) is not None}
    return settings.model_copy(update=updates)


def _run_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    overrides = {name: getattr(args, name, None) for name in RunConfig.model_fields}
    return RunConfig.from_settings(settings, **overrides)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "export-env":
        path = Settings(_env_file=None).export_env_file(args.out)  # type: ignore[call-arg]
        print(path)
        return EXIT_SUCCESS
    if args.command == "export-schemas":
        for path in export_schemas(args.out):
            print(path)
        return EXIT_SUCCESS

    try:
        settings = _settings(args)
        logger = setup_logging(settings)
        config = _run_config(args, settings)
    except (ValidationError, RioError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    logger.info(f"Running {args.command} with seed {config.seed}")
    try:
        outcome = COMMANDS[args.command](CampaignService(config))
    except RioError as e:
        logger.error(f"{args.command} rejected its configuration: {e}")
        return EXIT_CONFIG_ERROR

    write_report(outcome.report, config.output_format, config.out)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
