import sys
import logging
import datetime
import platform
import os
import traceback

from defcol.version import dependency_versions, get_version


class Logger(object):
    """
    Diagnostics of one defcol run. stdout is left to the subcommand output, so the console
    handler writes to stderr; a DEBUG log file is added when a run has an output directory.
    """

    _NAME = 'defcol'
    _LOG_FILE = _NAME + '.log'
    _SINGLE_INDENT = '  '

    def __init__(self):
        self._logger = logging.getLogger(self._NAME)
        self._logger.setLevel(logging.DEBUG)
        self._logger.propagate = False
        self._log_fpath = ''
        self._start_time = None
        self._num_warnings = 0
        self._num_errors = 0
        self._replace_console_handler()

    def _replace_console_handler(self):
        # sys.stderr is looked up now, so redirected streams (tests, pipes) are honoured
        for handler in list(self._logger.handlers):
            if not isinstance(handler, logging.FileHandler):
                self._logger.removeHandler(handler)
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(logging.INFO)
        self._logger.addHandler(console_handler)

    def enable_debug_mode(self):
        for handler in self._logger.handlers:
            handler.setLevel(logging.DEBUG)

    def set_up_file_handler(self, output_dir):
        self._log_fpath = os.path.join(str(output_dir), self._LOG_FILE)
        file_handler = logging.FileHandler(self._log_fpath, mode='w')
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter('%(asctime)s\t%(levelname)s\t%(message)s', '%H:%M:%S'))
        self._logger.addHandler(file_handler)

    @property
    def num_warnings(self):
        return self._num_warnings

    @property
    def num_errors(self):
        return self._num_errors

    def error(self, msg, is_exception=False):
        """Log an error; the exit code is decided by the caller."""
        self._num_errors += 1
        if is_exception:
            where = self._LOG_FILE if self._log_fpath else 'the --debug output'
            self._logger.error(f'EXCEPTION: {msg} (traceback in {where})')
            self._logger.debug(traceback.format_exc())
        else:
            self._logger.error(f'ERROR: {msg}')

    def exception(self, e):
        self.error(e, is_exception=True)

    def info(self, msg, indent=0):
        self._logger.info(indent * self._SINGLE_INDENT + msg)

    def debug(self, msg, indent=0):
        self._logger.debug(indent * self._SINGLE_INDENT + msg)

    def warning(self, msg):
        self._logger.warning('WARNING: ' + msg)
        self._num_warnings += 1

    def print_command_line(self):
        args = [f"'{arg}'" if ' ' in arg or '\t' in arg else arg for arg in sys.argv]
        self.debug('Started with command: ' + ' '.join(args))

    def print_system_info(self):
        self.debug(f"defcol {get_version()} on {platform.platform()}, "
                   f"Python {'.'.join(map(str, sys.version_info[:3]))}, {os.cpu_count()} CPU(s)")
        libraries = ', '.join(f'{name} {version}' for name, version in dependency_versions().items())
        self.debug('Libraries: ' + libraries, indent=1)

    def start(self):
        self.print_command_line()
        self.print_system_info()
        self._start_time = datetime.datetime.now()
        if self._log_fpath:
            self.info('Logging to ' + self._log_fpath)

    def finish(self):
        if self._start_time is not None:
            self.debug('Elapsed time: ' + str(datetime.datetime.now() - self._start_time))
        if self._num_warnings:
            self.info(f'WARNINGs: {self._num_warnings}')
        if self._log_fpath:
            self.info('Log is saved to ' + self._log_fpath)

        for handler in list(self._logger.handlers):
            if isinstance(handler, logging.FileHandler):
                handler.close()
            self._logger.removeHandler(handler)
