"""
Чтение и атомарная запись файлов
"""
import hashlib
import logging
import os
import tempfile
from typing import List

logger = logging.getLogger(__name__)


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as f:
        return f.read()


def read_lines(path: str) -> List[str]:
    """Непустые строки файла без пробелов по краям; строки с '#' в начале пропускаются"""
    return [
        line.strip() for line in read_text(path).splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]


def atomic_write_text(path: str, text: str) -> None:
    """Запись через временный файл в том же каталоге и os.replace"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    logger.debug(f"Записан файл {path} ({len(text)} символов)")


def file_digest(path: str) -> str:
    sha = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            sha.update(chunk)
    return sha.hexdigest()
