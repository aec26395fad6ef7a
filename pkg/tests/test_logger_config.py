import logging

from config import settings
from config.logger_config import RUN_ID, RunContextFilter, log_run_context, run_context, setup_logger


class Collect(logging.Handler):
    def __init__(self):
        super().__init__()
        self.records = []

    def emit(self, record):
        self.records.append(record)


def test_records_carry_the_run_id():
    record = logging.LogRecord("coulombkit", logging.INFO, __file__, 1, "hello", None, None)
    assert RunContextFilter().filter(record)
    assert record.run_id == RUN_ID


def test_setup_is_idempotent():
    first = setup_logger("tests.logger.idempotent")
    count = len(first.handlers)
    assert setup_logger("tests.logger.idempotent") is first
    assert len(first.handlers) == count


def test_run_context_prefers_the_command_line(monkeypatch):
    monkeypatch.setattr(settings, "THREADS", 3)
    monkeypatch.setattr(settings, "ENUMERATION_BUDGET", 500)
    assert run_context() == {
        "budget": 500,
        "dim_limit": settings.DIMENSION_LIMIT,
        "prescan_radius": settings.PRESCAN_RADIUS,
        "threads": 3,
    }
    assert run_context(threads=1)["threads"] == 1


def test_run_context_is_logged():
    logger = logging.getLogger("tests.logger.context")
    logger.setLevel(logging.INFO)
    logger.propagate = False
    logger.addFilter(RunContextFilter())
    collect = Collect()
    logger.addHandler(collect)
    try:
        context = log_run_context(logger, "classify", threads=2)
    finally:
        logger.removeHandler(collect)
    (record,) = collect.records
    assert record.levelno == logging.INFO
    assert record.getMessage().startswith("classify starting: budget=")
    assert "threads=2" in record.getMessage()
    assert record.run_id == RUN_ID
    assert context["threads"] == 2
