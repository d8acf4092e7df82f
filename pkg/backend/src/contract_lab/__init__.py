import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

# Load environment variables from project root
# Navigate up from backend/src/contract_lab/ to project root
project_root = Path(__file__).parent.parent.parent.parent
env_path = project_root / '.env'
load_dotenv(dotenv_path=env_path)


class Settings(BaseModel):
    """Process-wide settings read from the environment."""
    model_config = ConfigDict(frozen=True)

    threads: int = Field(0, ge=0, description="Worker cap for factorial cells (0 = auto)")
    seed: int = Field(20240601, ge=0, description="Default simulation seed")
    output_dir: Path = Field(Path("output"), description="Default directory for CSV output")
    log_level: str = Field("WARNING", description="Root log level for the CLI")


def _read_settings() -> Settings:
    return Settings(
        threads=int(os.getenv("CONTRACTLAB_THREADS", "0") or 0),
        seed=int(os.getenv("CONTRACTLAB_SEED", "20240601") or 20240601),
        output_dir=Path(os.getenv("CONTRACTLAB_OUTPUT_DIR", "output") or "output"),
        log_level=os.getenv("CONTRACTLAB_LOG_LEVEL", "WARNING") or "WARNING",
    )


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the global settings instance."""
    global _settings
    if _settings is None:
        _settings = _read_settings()
    return _settings


def reload_settings() -> Settings:
    """Re-read the environment (tests and the CLI's --seed flag use this)."""
    global _settings
    _settings = _read_settings()
    return _settings
