from enum import IntEnum


class ExitStatus(IntEnum):
    """Process exit statuses: the property holds, is refuted, or the input was unusable."""
    OK = 0
    REFUTED = 1
    USAGE = 2
