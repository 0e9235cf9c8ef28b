"""
Машиночитаемый отчёт о запуске: входы, конфигурация, сид, версии пакетов
"""
import json
import logging
import platform
import sys
from datetime import datetime, timezone
from importlib import metadata
from typing import Any, Dict, List, Optional

from config import RunConfig
from utils.file_utils import atomic_write_text, file_digest

logger = logging.getLogger(__name__)

TRACKED_PACKAGES = ("pyparsing", "networkx", "rdflib", "Levenshtein", "nltk", "numpy", "python-dotenv")


def package_versions() -> Dict[str, Optional[str]]:
    versions: Dict[str, Optional[str]] = {"python": platform.python_version()}
    for name in TRACKED_PACKAGES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = None
    return versions


class RunReport:
    """Собирает сведения о запуске и пишет их в JSON"""

    def __init__(self, command: str, argv: List[str], config: RunConfig):
        self.command = command
        self.argv = list(argv)
        self.config = config
        self.inputs: Dict[str, str] = {}
        self.outputs: List[str] = []
        self.summary: Dict[str, Any] = {}
        self.started = datetime.now(timezone.utc)

    def add_input(self, path: str) -> None:
        try:
            self.inputs[path] = file_digest(path)
        except OSError as e:
            logger.debug(f"Нет дайджеста для {path}: {e}")

    def add_output(self, path: str) -> None:
        if path not in self.outputs:
            self.outputs.append(path)

    def to_dict(self, exit_code: int) -> Dict[str, Any]:
        return {
            "command": self.command,
            "argv": self.argv,
            "exit_code": exit_code,
            "started": self.started.isoformat(),
            "seed": self.config.seed,
            "threads": self.config.threads,
            "config": self.config.to_dict(),
            "config_digest": self.config.digest(),
            "inputs": self.inputs,
            "outputs": self.outputs,
            "summary": self.summary,
            "versions": package_versions(),
            "executable": sys.executable,
        }

    def write(self, path: str, exit_code: int) -> None:
        text = json.dumps(self.to_dict(exit_code), indent=2, ensure_ascii=False, sort_keys=True)
        atomic_write_text(path, text + "\n")
        logger.debug(f"Отчёт о запуске записан в {path}")
