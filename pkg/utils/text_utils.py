"""
Утилиты для меток: нормализация и разбиение идентификаторов на слова
"""
import re
import unicodedata
from typing import List

_CAMEL_BOUNDARY = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")
_SEPARATORS = re.compile(r"[_\-\s]+")
_WHITESPACE = re.compile(r"\s+")


class LabelUtils:
    """Приведение меток и имён сущностей к единому виду"""

    @staticmethod
    def normalise(label: str) -> str:
        """NFC, нижний регистр, пробелы схлопнуты, края обрезаны"""
        return _WHITESPACE.sub(" ", unicodedata.normalize("NFC", label)).strip().lower()

    @staticmethod
    def split_identifier(name: str) -> List[str]:
        """
        Разбиение camelCase и snake_case на слова

        "derivesFrom" -> ["derives", "from"], "part_of" -> ["part", "of"]
        """
        words = []
        for chunk in _SEPARATORS.split(name):
            if chunk:
                words.extend(w for w in _CAMEL_BOUNDARY.split(chunk) if w)
        return words

    @staticmethod
    def identifier_to_label(name: str) -> str:
        return " ".join(LabelUtils.split_identifier(name)).lower()


def normalise_label(label: str) -> str:
    return LabelUtils.normalise(label)


def identifier_to_label(name: str) -> str:
    return LabelUtils.identifier_to_label(name)
