import datetime
import logging
import threading

import colorama
from colorama import Back, Fore, Style

LEVEL_COLORS = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: "",
    logging.WARNING: Fore.YELLOW + Style.BRIGHT,
    logging.ERROR: Fore.RED + Style.BRIGHT,
    logging.CRITICAL: Fore.CYAN + Style.BRIGHT + Back.RED,
}

logger = logging.getLogger("InteractionBounds")


class LogFormatter(logging.Formatter):
    """Colourful formatting with time and thread, so the bound worker and the sampling loop can be told apart"""

    def format(self, record):
        out_string = LEVEL_COLORS.get(record.levelno, "")
        out_string += "[" + datetime.datetime.now().strftime("%H:%M:%S") + " " + threading.current_thread().name + " " + record.levelname + "]"
        out_string += Style.RESET_ALL
        out_string += "  "
        out_string += record.getMessage()
        if record.exc_info:
            out_string += "\n" + self.formatException(record.exc_info)
        return out_string


def install_handler(level="INFO"):
    """Attach one coloured stream handler to the package logger.  Calling it again only changes the level."""
    logger.setLevel(level)
    if any(isinstance(h.formatter, LogFormatter) for h in logger.handlers):
        return logger
    colorama.init()
    sh = logging.StreamHandler()
    sh.setFormatter(LogFormatter())
    logger.addHandler(sh)
    return logger
