# Copyright (C) 2026 OrbitRank contributors
#
# This file is part of OrbitRank.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.


from pathlib import Path
from types import SimpleNamespace

from textual import on, work
from textual.app import App, ComposeResult
from textual.containers import Grid, Horizontal, Vertical, VerticalScroll
from textual.widgets import Button, Header, Input, Label, Select, Static
from textual_fspicker import FileSave, Filters

from orbitrank import report
from orbitrank.cli import COMMANDS
from orbitrank.config import (
    CONFIG_FILE,
    DEFAULTS,
    RunConfig,
    load_config,
    options_from,
    parse_group,
    parse_weight,
    save_config,
)
from orbitrank.errors import ConfigurationError
from tui.messages import ComputationFinished, ComputationProgress
from tui.screens import ConfigScreen, LeaveScreen

OPERATIONS = [
    ("r0: hull of r points contains 0", "r0"),
    ("r: partial hulls are convex", "r"),
    ("d1: least invariant degree", "d1"),
    ("b1: least degree over multiples", "b1"),
    ("scan r0 over a grid", "scan:r0"),
    ("scan r over a grid", "scan:r"),
    ("scan d1 over a grid", "scan:d1"),
    ("verify closed-form tables", "verify-paper"),
]

EXIT_TEXT = {0: "[green]done[/green]", 1: "[red]failed checks[/red]", 2: "[yellow]unknown values[/yellow]"}


class OrbitRank(App):
    """A Textual app to compute partial convex hull invariants of coadjoint orbits."""

    APP_NAME = "OrbitRank"
    TITLE = APP_NAME
    CSS_PATH = "app.css"
    BINDINGS = [
        ("ctrl+r", "run", "Run"),
        ("ctrl+s", "save_config", "Save settings"),
    ]
    HORIZONTAL_BREAKPOINTS = [
        (0, "-narrow"),
        (80, "-wide"),
    ]

    CONFIG_FILE = CONFIG_FILE
    configuration = SimpleNamespace(**vars(DEFAULTS))
    last_result: tuple[str, dict] | None = None
    report_saved = False

    def compose(self) -> ComposeResult:
        """Create child widgets for the app."""
        yield Header()
        with Vertical(id="all_around"):
            with Horizontal(id="inputs"):
                yield Select(OPERATIONS, value="r0", allow_blank=False, id="operation")
                with Horizontal(classes="input_container"):
                    yield Label("Group:")
                    yield Input(value="A2", placeholder="A3, D5", id="group")
                with Horizontal(classes="input_container"):
                    yield Label("Weight:", id="weight_label")
                    yield Input(value="1,0", placeholder="1,0,3/2", id="weight")
            yield Static("", id="run_status")
            with VerticalScroll(id="report"):
                yield Static("", id="report_text", markup=False)
            with Grid(id="action_buttons"):
                yield Button("Run", variant="primary", id="run")
                yield Button("Save JSON", id="save_report", disabled=True)
                yield Button("Configure", id="configure_button")
                yield Button("Quit", variant="error", id="quit")

    def on_mount(self) -> None:
        """Load the configuration from the JSON file when the app starts."""
        try:
            vars(self.configuration).update(vars(load_config(self.CONFIG_FILE)))
        except ConfigurationError as error:
            self.notify(str(error), severity="error")
            return
        if Path(self.CONFIG_FILE).exists():
            self.notify("Configuration loaded...", timeout=1)

    def on_select_changed(self, event: Select.Changed) -> None:
        label = self.query_one("#weight_label", Label)
        weight = self.query_one("#weight", Input)
        kind = str(event.value)
        weight.disabled = kind == "verify-paper"
        label.update("Max coefficient:" if kind.startswith("scan") else "Weight:")

    def on_button_pressed(self, event: Button.Pressed) -> None:
        """Called when a button is pressed."""
        if event.button.id == "run":
            self.action_run()

        if event.button.id == "configure_button":
            self.push_screen(ConfigScreen())

        if event.button.id == "quit":

            def check_leave(confirmed: bool) -> None:
                """Called with the result of the leave dialog."""
                if confirmed:
                    self.action_quit()

            running = any(worker.is_running for worker in self.workers)
            unsaved = self.last_result[0] if self.last_result and not self.report_saved else None
            self.push_screen(LeaveScreen(running, unsaved, str(self.CONFIG_FILE)), check_leave)

    def action_run(self) -> None:
        self.run_computation(
            str(self.query_one("#operation", Select).value),
            self.query_one("#group", Input).value,
            self.query_one("#weight", Input).value,
        )

    @work(thread=True, exclusive=True)
    def run_computation(self, kind: str, group: str, text: str) -> None:
        """Run one library operation in a background worker."""
        command, _, which = kind.partition(":")
        self.post_message(ComputationProgress(label="...computing...", disabled=True))
        try:
            args = SimpleNamespace(command=command, which=which, families=None, max_coeff=0)
            series, rank = parse_group(group) if command != "verify-paper" else ("A", 1)
            weight = None
            if command == "scan":
                try:
                    args.max_coeff = int(text)
                except ValueError as error:
                    raise ConfigurationError(f"max coefficient {text!r} is not an integer") from error
            elif command != "verify-paper":
                weight = parse_weight(text, rank)
            config = RunConfig(
                series=series,
                rank=rank,
                weight=weight,
                options=options_from(self.configuration),
                cache=Path(self.configuration.cache) if self.configuration.cache else None,
                json=bool(self.configuration.json),
            )
            payload, code = COMMANDS[command](args, config)
            self.post_message(ComputationFinished(kind=command, payload=payload, exit_code=code))
        except Exception as e:
            self.post_message(ComputationFinished(kind=command, error=str(e)))
        finally:
            self.post_message(ComputationProgress(label="Run", disabled=False))

    def on_computation_progress(self, message: ComputationProgress) -> None:
        button = self.query_one("#run", Button)
        button.label = message.label
        button.disabled = message.disabled

    def on_computation_finished(self, message: ComputationFinished) -> None:
        status = self.query_one("#run_status", Static)
        text = self.query_one("#report_text", Static)
        if message.error:
            status.update(f"[red]{message.error}[/red]")
            text.update("")
            self.last_result = None
        else:
            status.update(EXIT_TEXT.get(message.exit_code, ""))
            text.update(report.render(message.kind, message.payload, bool(self.configuration.json)))
            self.last_result = (message.kind, message.payload)
            self.report_saved = False
        self.query_one("#save_report", Button).disabled = self.last_result is None

    def action_save_config(self) -> None:
        """Save the configuration to the JSON file."""
        save_config(self.configuration, self.CONFIG_FILE)

    def action_quit(self) -> None:
        """Save the configuration to the JSON file when the app closes."""
        self.action_save_config()
        self.exit()

    @on(Button.Pressed)
    @work
    async def save_a_file(self, event: Button.Pressed) -> None:
        if event.button.id == "save_report" and self.last_result:
            kind, payload = self.last_result
            if save_to := await self.app.push_screen_wait(
                FileSave(
                    default_file=f"{kind}.json",
                    filters=Filters(("JSON", lambda p: p.suffix.lower() == ".json")),
                )
            ):
                Path(save_to).write_text(report.to_json(payload) + "\n")
                self.report_saved = True
                self.notify("Saved", timeout=1)


if __name__ == "__main__":
    app = OrbitRank()
    app.run()
