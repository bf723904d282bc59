from rich.console import Console

# stdout carries JSON reports; everything human-facing goes to stderr.
console = Console(stderr=True)


def set_quiet(quiet: bool) -> None:
    console.quiet = quiet


def warn(message: str) -> None:
    console.print(f"[yellow]Warning: {message}[/yellow]")
