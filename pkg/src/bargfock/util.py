import logging

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

# Initialize Rich console
console = Console()


def configure_logging(level: str = "WARNING") -> None:
    """Route bargfock logging through a RichHandler on stderr"""
    handler = RichHandler(console=Console(stderr=True), show_path=False, markup=False)
    logger = logging.getLogger("bargfock")
    logger.handlers.clear()
    logger.addHandler(handler)
    logger.setLevel(level.upper())
    logger.propagate = False


# Formatting Utilities
def print_banner(title: str):
    """Display a banner for a command run"""
    console.print(
        Panel(
            Text.from_markup(f"[bold cyan]bargfock[/bold cyan] - [yellow]{title}[/yellow]"),
            expand=False,
            border_style="cyan",
            padding=(0, 2),
        )
    )


def print_success(message: str):
    """Print success message"""
    console.print(f"[green]✓[/green] {escape(message)}")


def print_error(message: str):
    """Print error message"""
    console.print(f"[red]✗[/red] {escape(message)}")


def print_info(message: str):
    """Print info message"""
    console.print(f"[blue]ℹ[/blue] {escape(message)}")


def print_report_table(suite: str, checks) -> None:
    """Display verification checks as a table"""
    table = Table(title=f"verify {suite}", show_header=True, header_style="bold cyan")
    table.add_column("Check", style="yellow")
    table.add_column("Result", width=6)
    table.add_column("Measured", justify="right")
    table.add_column("Tolerance", justify="right")

    for check in checks:
        status = "[green]pass[/green]" if check.passed else "[red]FAIL[/red]"
        table.add_row(check.name, status, f"{check.measured:.3e}", f"{check.tolerance:.3e}")

    console.print()
    console.print(table)
    console.print()
