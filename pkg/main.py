import argparse
import asyncio
import sys
from dataclasses import replace

from rich.panel import Panel
from rich import print as rprint

from analysis_spec import read_spec
from config import load_settings
from errors import (
    BudgetExceededError,
    InconclusiveNumericsError,
    InputValidationError,
    UnsupportedScaleError,
)
from report import to_json, write_decay_csv, write_json, write_sublevel_csv
from smoothing_analysis import analyze_document, classify_document, verify_decay, verify_sublevel
from utils.console import console, set_quiet
from utils.rational import parse_rational

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_UNSUPPORTED = 3
EXIT_INCONCLUSIVE = 4


def emit(document: dict, out: str = None) -> None:
    """Writes a JSON document to `out`, or to stdout."""
    if out:
        write_json(document, out)
        console.print(f"\n[dim]Report has been saved to {out}[/dim]")
    else:
        sys.stdout.write(to_json(document))


def write_csv(verification, command: str, path: str) -> None:
    if not path or verification is None or verification.fit is None:
        return
    if command == "verify-sublevel":
        write_sublevel_csv(verification.fit, path)
    else:
        write_decay_csv(verification.fit, path)
    console.print(f"[dim]Table has been saved to {path}[/dim]")


async def run(args, settings) -> int:
    spec = read_spec(args.spec)
    if args.seed is not None or args.budget is not None:
        oracle = replace(
            spec.oracle,
            seed=args.seed if args.seed is not None else spec.oracle.seed,
            budget=args.budget if args.budget is not None else spec.oracle.budget,
        )
        spec = replace(spec, oracle=oracle)

    if args.command == "analyze":
        document = await analyze_document(spec, settings, args.override_o)
        theorem = document["theorem"]
        console.print(
            Panel.fit(
                f"a0 = {document['a0']}, d0 = {document['d0']}, g = {theorem['g']}\n"
                f"o(S) = {document['o']['value']} [dim]({document['o']['mode']})[/dim]",
                title="Smoothing exponents",
            )
        )
        emit(document, args.out)
        return EXIT_OK

    if args.command == "classify":
        if args.p is None or args.beta is None:
            raise ValueError("classify needs --p and --beta.")
        p, beta = parse_rational(args.p), parse_rational(args.beta)
        if p <= 1:
            raise ValueError(f"p must satisfy 1 < p < infinity, got {p}.")
        document = await classify_document(spec, settings, 1 / p, beta, args.override_o)
        console.print(Panel.fit(f"[bold]{document['verdict']}[/bold]", title=f"(1/p, beta) = (1/{args.p}, {args.beta})"))
        for caveat in document["caveats"]:
            rprint(f"• {caveat}")
        emit(document, args.out)
        return EXIT_OK

    try:
        if args.command == "verify-sublevel":
            verification = await verify_sublevel(spec, settings, args.override_o)
        else:
            verification = await verify_decay(spec, settings, args.direction, args.allow_3d_oscillatory, args.override_o)
    except InconclusiveNumericsError as e:
        console.print(f"[yellow]Inconclusive: {e}[/yellow]")
        if e.payload is not None:
            write_csv(e.payload, args.command, args.csv)
            emit(e.payload.document, args.out)
        return EXIT_INCONCLUSIVE

    write_csv(verification, args.command, args.csv)
    status = "[bold green]consistent[/bold green]" if verification.passed else "[bold red]mismatch[/bold red]"
    console.print(Panel.fit(status, title=args.command))
    emit(verification.document, args.out)
    return EXIT_OK if verification.passed else EXIT_MISMATCH


async def main(args) -> int:
    """Newton polyhedra smoothing CLI"""
    set_quiet(args.quiet)
    try:
        settings = load_settings().override(
            seed=args.seed,
            budget=args.budget,
            fourier_budget=args.budget,
            concurrency=args.concurrency,
        )
        return await run(args, settings)
    except InputValidationError as e:
        console.print(f"[red]Invalid input:[/red] {e}")
        emit({"validation": {"passed": False, "failures": list(e.report.failures)}}, args.out)
        return EXIT_INVALID
    except (UnsupportedScaleError, BudgetExceededError) as e:
        console.print(f"[red]Unsupported:[/red] {e}")
        return EXIT_UNSUPPORTED
    except ValueError as e:
        console.print(f"[red]Error:[/red] {e}")
        return EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Newton polyhedra smoothing CLI")
    parser.add_argument("command", choices=["analyze", "verify-sublevel", "verify-decay", "classify"])
    parser.add_argument("--spec", required=True, help="Spec file (key = value) or a JSON report to re-run.")
    parser.add_argument("--out", help="Write the JSON report here instead of stdout.")
    parser.add_argument("--csv", help="Write the oracle table (verify commands) here.")
    parser.add_argument("--seed", type=int, help="Seed for every sampler.")
    parser.add_argument("--budget", type=int, help="Evaluation budget of the numeric oracles.")
    parser.add_argument("--direction", help="Decay direction: 1..n+1 (n+1 is the S direction) or 'random'.")
    parser.add_argument("--override-o", type=int, help="Use this value for o(S) instead of computing it.")
    parser.add_argument("--allow-3d-oscillatory", action="store_true", help="Allow verify-decay for n = 3.")
    parser.add_argument("--p", help="Lebesgue exponent for classify, 1 < p < infinity (e.g. 2 or 3/2).")
    parser.add_argument("--beta", help="Smoothing order for classify, a positive rational.")
    parser.add_argument(
        "--concurrency",
        type=int,
        default=None,
        help="Number of concurrent worker tasks.",
    )
    parser.add_argument("--quiet", action="store_true", help="Silence progress output on stderr.")
    return parser


if __name__ == "__main__":
    args = build_parser().parse_args()
    sys.exit(asyncio.run(main(args)))
