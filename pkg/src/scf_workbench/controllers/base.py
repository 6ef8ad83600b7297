import argparse

from scf_workbench.config import logger
from scf_workbench.exit_status import ExitStatus
from scf_workbench.utils import emit


class Controller:
    """
    Base for subcommand controllers.
    Subclasses implement `execute`; `handle` maps input errors to the usage exit status.
    """
    name = "command"

    def handle(self, args: argparse.Namespace) -> ExitStatus:
        """
        Run the subcommand and translate failures into exit statuses.
        Args:
            args: Parsed command-line arguments.
        Returns:
            OK, REFUTED or USAGE.
        """
        logger.info(f"Command received: {self.name}")
        try:
            status = self.execute(args)
        except FileNotFoundError as e:
            logger.error(f"{self.name}: file not found: {e.filename}")
            emit(f"error: file not found: {e.filename}")
            return ExitStatus.USAGE
        except ValueError as e:
            logger.warning(f"{self.name}: rejected input: {e}")
            emit(f"error: {e}")
            return ExitStatus.USAGE
        except Exception as e:
            logger.exception(f"{self.name}: unexpected failure: {e}")
            emit(f"error: {self.name} failed: {e}")
            return ExitStatus.USAGE
        logger.info(f"Command {self.name} finished with status {status.name}")
        return status

    def execute(self, args: argparse.Namespace) -> ExitStatus:
        raise NotImplementedError
