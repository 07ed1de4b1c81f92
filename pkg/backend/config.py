import os
import logging
from typing import List
from dotenv import load_dotenv

load_dotenv()


def _flag(name: str, default: str = "false") -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


DEBUG = _flag("DEBUG")
DEFAULT_TIMEOUT = float(os.getenv("MUKANREN_TIMEOUT", "10"))
DEFAULT_SYSTEM = os.getenv("MUKANREN_SYSTEM", "standard")
RECURSION_LIMIT = int(os.getenv("MUKANREN_RECURSION_LIMIT", "20000"))
MAX_API_TIMEOUT = float(os.getenv("MUKANREN_MAX_API_TIMEOUT", "30"))

default_origins = "http://localhost:5173,http://localhost:3000"


def get_cors_origins() -> List[str]:
    origins = os.getenv("CORS_ORIGINS", default_origins)
    return [origin.strip() for origin in origins.split(",") if origin.strip()]


def configure_logging(default_level: int = logging.WARNING, debug: bool = False) -> None:
    """Diagnostics go to stderr; DEBUG in the environment (or --debug) lowers the level."""
    logging.basicConfig(
        level=logging.DEBUG if (debug or DEBUG) else default_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
