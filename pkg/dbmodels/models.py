from datetime import datetime, timezone

from sqlalchemy import Column, DateTime, Integer, String, Text

from config.database import Base


class ReportRecord(Base):
    __tablename__ = "report_archive"

    id = Column(Integer, primary_key=True, index=True)
    command = Column(String(64), nullable=False, index=True)
    input_digest = Column(String(64), nullable=True, index=True)
    version = Column(String(32), nullable=False)
    status = Column(String(16), nullable=False, default="ok")
    payload = Column(Text, nullable=False)  # the rendered report JSON
    created_at = Column(DateTime, nullable=False, default=lambda: datetime.now(timezone.utc))

    def __repr__(self):
        return (
            f"<ReportRecord(id={self.id}, command='{self.command}', "
            f"status='{self.status}', input_digest='{self.input_digest}')>"
        )
