import unittest

from conewright.report import CheckItem, RunReport


class CheckItemTest(unittest.TestCase):

    def test_passed(self):
        self.assertTrue(CheckItem('v4', 'odp', 26, 26).passed)
        self.assertFalse(CheckItem('v4', 'odp', 26, 25).passed)

    def test_tuples_compare_as_lists(self):
        self.assertTrue(CheckItem('v4', 'walls', ((15, -17), (8, -9)), [[15, -17], [8, -9]]).passed)
        self.assertFalse(CheckItem('v4', 'walls', ((15, -17),), ((15, 17),)).passed)

    def test_to_dict(self):
        item = CheckItem('v5', 'chi', (-1, 3), (-1, 3))
        self.assertEqual(item.to_dict(),
                         {'case': 'v5', 'name': 'chi', 'expected': [-1, 3], 'computed': [-1, 3], 'passed': True})


class RunReportTest(unittest.TestCase):

    def test_empty(self):
        report = RunReport()
        self.assertTrue(report.passed())
        self.assertEqual(report.total(), 0)
        self.assertTrue(report.render().endswith('0/0 checks passed.\n'))

    def test_failure_log(self):
        report = RunReport()
        report.record(CheckItem('v4', 'odp', 26, 26))
        report.record(CheckItem('v4', 'c2.H', 60, 59))
        self.assertFalse(report.passed())
        self.assertEqual(report.passed_count(), 1)
        self.assertEqual(len(report.failures()), 1)
        log = report.render()
        self.assertIn('v4: c2.H failed.\nExpected:\t60\nOutput:\t\t59', log)
        self.assertTrue(log.endswith('1/2 checks passed.\n'))

    def test_errors(self):
        report = RunReport()
        report.record(CheckItem('gr24', 'odp', 41, 41))
        report.record_error('gr24', 'walls', RuntimeError('boom'))
        self.assertFalse(report.passed())
        self.assertEqual(report.total(), 2)
        self.assertEqual(report.errors(), (('gr24', 'walls', 'RuntimeError', 'boom'),))
        self.assertIn('gr24: walls raised RuntimeError.\nMessage: boom', report.render())
        self.assertEqual(report.to_dict()['errors'],
                         [{'case': 'gr24', 'name': 'walls', 'error': 'RuntimeError', 'message': 'boom'}])

    def test_traceback(self):
        report = RunReport(show_tb=True)
        try:
            raise ValueError('bad')
        except ValueError as e:
            report.record_error('v5', 'table3', e)
        self.assertIn('report_test.py', report.errors()[0][3])

    def test_to_dict(self):
        report = RunReport()
        report.record(CheckItem('v4', 'odp', 26, 26))
        out = report.to_dict()
        self.assertEqual((out['passed'], out['total']), (1, 1))
        self.assertEqual(out['items'][0]['name'], 'odp')


if __name__ == '__main__':
    unittest.main()
