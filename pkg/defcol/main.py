import sys
from typing import List, Optional, TextIO

from defcol.coloring import ColoringError
from defcol.defect import DefectPreconditionError, SearchBudgetExhausted
from defcol.graph_file_parser import GraphFileParseError, GraphFileReadError
from defcol.instances.generators import GeneratorParameterError
from defcol.instances.oracles import SizeGuardError
from defcol.logger import Logger
from defcol.option_parser import UsageError, ValidationError
from defcol.pipeline_helper import PipelineHelper
from defcol.plane_graph import GraphError
from defcol.transversal import AvoidanceCycleError

EXIT_USAGE = 2


def run(log: Logger, argv: Optional[List[str]] = None,
        stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Run one defcol subcommand and return its exit code.
    log is passed as an argument to make it easier to write log in case of exception.
    """
    pipeline_helper = PipelineHelper(log, argv, stdin=stdin, stdout=stdout)
    return pipeline_helper.run_command()


def main(argv: Optional[List[str]] = None, stdin: Optional[TextIO] = None,
         stdout: Optional[TextIO] = None) -> int:
    """
    Main entry point function. Sets up logger and handles top-level exceptions.
    Returns 0 on success, 1 on a failed check or an unexpected error, 2 on bad usage or input.
    """
    log = Logger()
    try:
        return run(log, argv, stdin=stdin, stdout=stdout)
    except UsageError as e:
        return e.code
    except (ValidationError, GeneratorParameterError) as e:
        log.error(f"invalid arguments: {e}")
        return EXIT_USAGE
    except GraphFileReadError as e:
        log.error(f"cannot read input: {e}")
        return EXIT_USAGE
    except GraphFileParseError as e:
        log.error(f"malformed graph file: {e}")
        return EXIT_USAGE
    except SizeGuardError as e:
        log.error(f"size guard exceeded: {e} (raise ORACLE_MAX_N / ORACLE_MAX_EDGES at your own risk)")
        return EXIT_USAGE
    except (GraphError, ColoringError, AvoidanceCycleError, DefectPreconditionError) as e:
        log.error(f"invalid input: {e}")
        return EXIT_USAGE
    except SearchBudgetExhausted as e:
        log.error(f"search budget exhausted: {e}")
        return 1
    except Exception:
        _, exc_value, _ = sys.exc_info()
        log.exception(exc_value)
        return 1
    finally:
        log.finish()


if __name__ == "__main__":
    sys.exit(main())
