"""
Точка входа командной строки: подкоманды над онтологиями, сопоставление и оценка
"""
import argparse
import logging
import sys
from typing import List, Optional

from config import LOG_FILE, LOG_LEVEL, RUN_REPORT_PATH, RunConfig
from handlers import HANDLER_MODULES
from models import OntologyError, ParseError
from utils.run_report import RunReport

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2


class UsageError(Exception):
    pass


class CliParser(argparse.ArgumentParser):
    """Ошибки использования завершают работу с кодом 1, а не 2 как в argparse"""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def setup_logging(quiet: bool = False) -> None:
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    if LOG_FILE:
        handlers.append(logging.FileHandler(LOG_FILE))
    logging.basicConfig(
        level=logging.WARNING if quiet else LOG_LEVEL,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def build_parser() -> CliParser:
    common = CliParser(add_help=False)
    common.add_argument("--config", help="JSON-файл конфигурации")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--quiet", action="store_true", help="без сводок и информационных логов")
    common.add_argument("--report", default=RUN_REPORT_PATH, help="путь отчёта о запуске")

    parser = CliParser(prog="ontokit", description="Инструменты инженерии онтологий")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    for module in HANDLER_MODULES:
        module.register(subparsers, common)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Выполняет подкоманду и возвращает код выхода: 0 успех, 1 ошибка данных, 2 ошибка разбора"""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"ошибка: {e}", file=sys.stderr)
        return EXIT_INVALID

    setup_logging(args.quiet)
    try:
        config = RunConfig.load(args.config)
        if args.seed is not None:
            config.seed = args.seed
        if args.threads is not None:
            config.threads = args.threads
            config.override("matcher", threads=args.threads)
    except (OntologyError, OSError) as e:
        logger.error(f"❌ Конфигурация: {e}")
        return EXIT_INVALID

    report = RunReport(args.command, argv, config)
    exit_code = EXIT_OK
    try:
        logger.info(f"🚀 Запуск {args.command}")
        args.handler(args, config, report)
    except ParseError as e:
        for diagnostic in e.diagnostics:
            logger.error(f"❌ {diagnostic}")
        exit_code = EXIT_PARSE
    except (OntologyError, OSError) as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        exit_code = EXIT_INVALID
    finally:
        if args.report:
            try:
                report.write(args.report, exit_code)
            except OSError as e:
                logger.error(f"❌ Не удалось записать отчёт о запуске: {e}")
                exit_code = exit_code or EXIT_INVALID

    return exit_code


if __name__ == "__main__":
    try:
        sys.exit(run())
    except KeyboardInterrupt:
        logger.info("🛑 Остановлено пользователем")
        sys.exit(130)
