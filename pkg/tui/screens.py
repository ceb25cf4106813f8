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


from textual import events
from textual.app import ComposeResult
from textual.containers import Horizontal, Vertical
from textual.screen import ModalScreen
from textual.widgets import Button, Input, Label, Static, Switch

from orbitrank.config import format_weight, options_from, parse_qset
from orbitrank.errors import ConfigurationError

NAVIGATION = [
    ("left", "focus_previous", "Focus Previous"),
    ("right", "focus_next", "Focus Next"),
    ("up", "focus_previous", "Focus Previous"),
    ("down", "focus_next", "Focus Next"),
]

# setting -> label, unit
INTEGER_SETTINGS = {
    "r_max": ("Largest r searched:", ""),
    "d_max": ("Largest degree:", ""),
    "q_max": ("Largest multiple for b1:", ""),
    "threads": ("Worker threads:", "threads"),
    "search_budget": ("Orbit search budget:", "steps"),
}


class LeaveScreen(ModalScreen[bool]):
    """Confirm leaving while a computation runs or a report is unsaved."""

    BINDINGS = NAVIGATION + [("escape", "stay", "Stay")]

    def __init__(self, running: bool, unsaved: str | None, config_file: str):
        super().__init__()
        self.running = running
        self.unsaved = unsaved
        self.config_file = config_file

    def losses(self) -> list[str]:
        lines = []
        if self.running:
            lines.append("The running computation will be abandoned.")
        if self.unsaved:
            lines.append(f"The {self.unsaved} report has not been saved as JSON.")
        lines.append(f"Settings will be written to {self.config_file}.")
        return lines

    def compose(self) -> ComposeResult:
        with Vertical(id="leave_dialog"):
            yield Static("[bold]Leave OrbitRank?[/bold]", id="leave_title")
            for line in self.losses():
                yield Label(line, classes="leave_loss")
            with Horizontal(id="leave_buttons"):
                yield Button("Leave", variant="error", id="leave")
                yield Button("Stay", variant="primary", id="stay")

    def on_mount(self) -> None:
        self.query_one("#stay", Button).focus()

    def on_button_pressed(self, event: Button.Pressed) -> None:
        self.dismiss(event.button.id == "leave")

    def action_stay(self) -> None:
        self.dismiss(False)

    def action_focus_next(self) -> None:
        self.focus_next()

    def action_focus_previous(self) -> None:
        self.focus_previous()


class ConfigScreen(ModalScreen[bool]):
    """Screen with a dialog to edit search bounds and the result journal."""

    BINDINGS = NAVIGATION

    def compose(self) -> ComposeResult:
        with Vertical(id="config_dialog"):
            yield Static("[bold]Settings[/bold]", id="config_question")
            for name, (label, unit) in INTEGER_SETTINGS.items():
                with Horizontal(classes="input_container"):
                    yield Label(label)
                    yield Input(id=name, type="integer", max_length=9)
                    if unit:
                        yield Static(unit, classes="unit")
            with Horizontal(classes="input_container"):
                yield Label("Saturation multiples:")
                yield Input(placeholder="series default", id="q_set")
            with Horizontal(classes="input_container"):
                yield Label("Result journal:")
                yield Input(placeholder="no cache", id="cache")
            with Horizontal():
                yield Label("JSON reports:")
                with Horizontal(id="json_checkbox_container"):
                    yield Switch(id="json")
            yield Horizontal(
                Button("Save", "success", id="save"),
                Button("Cancel", "error", id="cancel"),
                id="config_buttons",
            )

    def on_mount(self) -> None:
        """Load the current configuration into the input fields."""
        configuration = self.app.configuration
        for name in INTEGER_SETTINGS:
            self.query_one(f"#{name}", Input).value = str(getattr(configuration, name))
        self.query_one("#q_set", Input).value = format_weight(configuration.q_set) if configuration.q_set else ""
        self.query_one("#cache", Input).value = configuration.cache or ""
        self.query_one("#json", Switch).value = bool(configuration.json)

    def update_config(self) -> None:
        configuration = self.app.configuration
        values = {}
        for name in INTEGER_SETTINGS:
            text = self.query_one(f"#{name}", Input).value.strip()
            try:
                values[name] = int(text)
            except ValueError as error:
                raise ConfigurationError(f"{INTEGER_SETTINGS[name][0].rstrip(':')} must be an integer") from error
        q_set = self.query_one("#q_set", Input).value.strip()
        values["q_set"] = parse_qset(q_set) if q_set else None
        values["cache"] = self.query_one("#cache", Input).value.strip() or None
        values["json"] = self.query_one("#json", Switch).value
        candidate = vars(configuration).copy()
        candidate.update(values)
        options_from(type(configuration)(**candidate))
        vars(configuration).update(values)

    def on_button_pressed(self, event: Button.Pressed) -> None:
        if event.button.id == "save":
            try:
                self.update_config()
            except ConfigurationError as error:
                self.notify(str(error), severity="error")
                return
            self.app.action_save_config()
            self.dismiss(True)
        else:
            self.dismiss(False)

    def action_focus_next(self) -> None:
        self.focus_next()

    def action_focus_previous(self) -> None:
        self.focus_previous()

    async def on_key(self, event: events.Key) -> None:
        if event.key == "escape":
            self.dismiss(False)
