from sqlalchemy import create_engine
from sqlalchemy.exc import SQLAlchemyError
from sqlalchemy.orm import declarative_base, sessionmaker

from config import settings

# Report archive URL; SQLite unless COULOMBKIT_ARCHIVE_URL says otherwise
SQLALCHEMY_DATABASE_URL = settings.ARCHIVE_URL


def make_engine(url: str = None):
    """Engine for the archive at ``url`` (defaults to the configured archive)."""
    try:
        return create_engine(url or SQLALCHEMY_DATABASE_URL, future=True)
    except SQLAlchemyError as e:
        raise RuntimeError(f"Cannot open report archive '{url or SQLALCHEMY_DATABASE_URL}': {e}")


def make_session(url: str = None):
    return sessionmaker(autocommit=False, autoflush=False, bind=make_engine(url))


# Base class for models
Base = declarative_base()


def get_db(url: str = None):
    db = make_session(url)()
    try:
        yield db
    finally:
        db.close()
