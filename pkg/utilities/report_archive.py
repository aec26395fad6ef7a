"""Writes reports to the SQL archive, migrating the schema to head first."""
from pathlib import Path

from alembic import command
from alembic.config import Config
from sqlalchemy.engine import make_url

from config import settings
from config.database import make_session
from config.logger_config import setup_logger
from dbmodels.models import ReportRecord

logger = setup_logger(__name__)


def _ensure_sqlite_directory(url: str):
    parsed = make_url(url)
    if parsed.get_backend_name() == "sqlite" and parsed.database not in (None, "", ":memory:"):
        Path(parsed.database).parent.mkdir(parents=True, exist_ok=True)


def upgrade_archive(url: str):
    cfg = Config(str(settings.PROJECT_ROOT / "alembic.ini"))
    cfg.set_main_option("script_location", str(settings.PROJECT_ROOT / "alembic"))
    cfg.set_main_option("sqlalchemy.url", url.replace("%", "%%"))
    cfg.attributes["configure_logging"] = False
    command.upgrade(cfg, "head")


def archive_report(report, url: str = None, status: str = "ok") -> int:
    """
    Store one rendered report.

    Args:
        report: a ``commands.reports.Report``.
        url: archive URL; defaults to COULOMBKIT_ARCHIVE_URL.
        status: short outcome tag such as "ok", "fail" or "recorded".

    Returns:
        int: the id of the new archive row.
    """
    url = url or settings.ARCHIVE_URL
    _ensure_sqlite_directory(url)
    upgrade_archive(url)
    session = make_session(url)()
    try:
        record = ReportRecord(
            command=report.command,
            input_digest=report.input_digest,
            version=report.version,
            status=status,
            payload=report.render(),
        )
        session.add(record)
        session.commit()
        logger.info(f"Archived {report.command} report as row {record.id}")
        return record.id
    finally:
        session.close()


def load_reports(url: str = None, command_name: str = None) -> list[ReportRecord]:
    session = make_session(url or settings.ARCHIVE_URL)()
    try:
        query = session.query(ReportRecord).order_by(ReportRecord.id)
        if command_name is not None:
            query = query.filter(ReportRecord.command == command_name)
        return query.all()
    finally:
        session.close()
