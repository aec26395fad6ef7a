"""create report archive

Revision ID: 0001
Revises:
Create Date: 2026-10-16
"""
import sqlalchemy as sa
from alembic import op

revision = "0001"
down_revision = None
branch_labels = None
depends_on = None


def upgrade():
    op.create_table(
        "report_archive",
        sa.Column("id", sa.Integer(), primary_key=True),
        sa.Column("command", sa.String(length=64), nullable=False),
        sa.Column("input_digest", sa.String(length=64), nullable=True),
        sa.Column("version", sa.String(length=32), nullable=False),
        sa.Column("status", sa.String(length=16), nullable=False),
        sa.Column("payload", sa.Text(), nullable=False),
        sa.Column("created_at", sa.DateTime(), nullable=False),
    )
    op.create_index("ix_report_archive_id", "report_archive", ["id"])
    op.create_index("ix_report_archive_command", "report_archive", ["command"])
    op.create_index("ix_report_archive_input_digest", "report_archive", ["input_digest"])


def downgrade():
    op.drop_index("ix_report_archive_input_digest", table_name="report_archive")
    op.drop_index("ix_report_archive_command", table_name="report_archive")
    op.drop_index("ix_report_archive_id", table_name="report_archive")
    op.drop_table("report_archive")
