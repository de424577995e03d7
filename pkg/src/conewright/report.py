"""This module provides the reproduction report used by `conewright check`.

This module contains the `CheckItem` and `RunReport` classes. A `RunReport` collects exact comparisons between
computed and expected values, together with any pipeline that crashed, and renders them as a diff-style log ending
in an `x/y checks passed.` summary.

Examples:
    Recording two comparisons and printing the log:

        report = RunReport()
        report.record(CheckItem('v4', 'odp', 26, 26))
        report.record(CheckItem('v4', 'c2.H', 60, 59))
        print(report.render())
"""
import traceback
from dataclasses import dataclass


def _plain(value):
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


@dataclass(frozen=True)
class CheckItem:
    """One exact comparison; it passes only if `computed == expected`."""
    case: str
    name: str
    expected: object
    computed: object

    @property
    def passed(self):
        """`True` if the computed value equals the expected one exactly."""
        return _plain(self.expected) == _plain(self.computed)

    def to_dict(self):
        """Returns the comparison as a JSON-compatible `dict`."""
        return {'case': self.case, 'name': self.name, 'expected': _plain(self.expected),
                'computed': _plain(self.computed), 'passed': self.passed}


class RunReport:
    """Collects `CheckItem`s and crashed checks for a set of cases."""

    def __init__(self, show_tb=False):
        self.__items = list()
        self.__errors = list()
        self.__show_tb = show_tb

    def record(self, item):
        """Records a finished comparison."""
        self.__items.append(item)

    def record_error(self, case, name, error):
        """Records a check that raised `error` instead of producing a value."""
        tb_str = ''
        if self.__show_tb:
            tb_str = '\n' + ''.join(traceback.format_tb(error.__traceback__))
        self.__errors.append((case, name, type(error).__name__, str(error) + tb_str))

    def items(self):
        """Returns the recorded `CheckItem`s in order."""
        return tuple(self.__items)

    def errors(self):
        """Returns the crashed checks as `(case, name, error type, message)` tuples."""
        return tuple(self.__errors)

    def failures(self):
        """Returns the `CheckItem`s that did not pass."""
        return tuple(item for item in self.__items if not item.passed)

    def passed(self):
        """Returns `True` if every item passed and nothing crashed."""
        return not self.__errors and not self.failures()

    def total(self):
        """Returns the number of recorded checks, crashed ones included."""
        return len(self.__items) + len(self.__errors)

    def passed_count(self):
        """Returns the number of checks that passed."""
        return len(self.__items) - len(self.failures())

    def to_dict(self):
        """Returns the report as a JSON-compatible `dict`."""
        return {
            'items': [item.to_dict() for item in self.__items],
            'errors': [{'case': c, 'name': n, 'error': e, 'message': m} for c, n, e, m in self.__errors],
            'passed': self.passed_count(),
            'total': self.total(),
        }

    def render(self):
        """Renders the failures and crashes followed by an `x/y checks passed.` line."""
        log = list()
        for item in self.failures():
            log.append(f'{item.case}: {item.name} failed.\nExpected:\t{_plain(item.expected)}\n'
                       f'Output:\t\t{_plain(item.computed)}')
        for case, name, error, message in self.__errors:
            log.append(f'{case}: {name} raised {error}.\nMessage: {message}')
        body = ("\n" + "-" * 40 + "\n").join(log)
        return f"{body}\n{'=' * 40}\n{self.passed_count()}/{self.total()} checks passed.\n"
