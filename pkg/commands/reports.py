# commands/reports.py
import json
from dataclasses import dataclass
from typing import Any, Optional

from pydantic import BaseModel, Field

from config import settings


class Report(BaseModel):
    """Envelope shared by every subcommand; deterministic for a fixed input."""

    command: str
    input_digest: Optional[str] = None
    result: dict[str, Any]
    version: str = settings.TOOLKIT_VERSION
    conventions: dict[str, str] = Field(default_factory=lambda: dict(settings.CONVENTIONS))
    timing: Optional[dict[str, float]] = None

    def render(self) -> str:
        payload = self.model_dump(exclude_none=True)
        return json.dumps(payload, sort_keys=True, indent=2)


@dataclass
class CommandOutcome:
    report: Report
    exit_code: int = 0
    text: Optional[str] = None  # TSV or DOT output replacing the JSON report

    def render(self) -> str:
        return self.text if self.text is not None else self.report.render()


def add_common_flags(parser):
    parser.add_argument("--threads", type=int, default=None, help="worker processes for large lattice scans")
    parser.add_argument("--archive", action="store_true", help="store the report in the archive")
    parser.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    return parser
