"""CLI interface for weaksig."""

from typing import Optional

import typer

from .commands import (
    bench_command,
    dataset_command,
    detect_command,
    enhance_command,
    eval_command,
    generate_command,
    replay_command,
    version_callback,
)

app = typer.Typer(
    help="Weak-signal enhancement toolkit. Exit codes: 0 success, 1 runtime or I/O error, "
    "2 usage error. Settings: flags > --config file > WEAKSIG_* environment > defaults.",
    no_args_is_help=True,
)


@app.callback()
def main(
    version: Optional[bool] = typer.Option(
        None, "--version", callback=version_callback, help="Show version and exit", is_eager=True
    ),
) -> None:
    """Weak-signal enhancement toolkit."""


app.command("generate")(generate_command)
app.command("enhance")(enhance_command)
app.command("detect")(detect_command)
app.command("eval")(eval_command)
app.command("bench")(bench_command)
app.command("dataset")(dataset_command)
app.command("replay")(replay_command)

__all__ = ["app"]
