import pytest

from multitree.dataset import parse_dataset, parse_schema

STUDENT_SCHEMA = """\
class: pass, fail.
hs_result: continuous.
hs_maths: continuous.
experience: yes, no.
temperament: patient, impatient.
"""

STUDENT_ROWS = """\
72,65,yes,patient,pass
55,40,no,impatient,fail
81,77,yes,impatient,pass
60,58,no,patient,pass
49,35,no,impatient,fail
77,70,yes,patient,pass
52,44,yes,impatient,fail
66,61,no,patient,pass
58,50,no,impatient,fail
70,68,yes,patient,pass
"""

TOY_SCHEMA = """\
class: pass, fail.
experience: yes, no.
temperament: patient, impatient.
"""

TOY_ROWS = """\
yes,patient,pass
yes,impatient,pass
no,patient,pass
no,impatient,fail
no,impatient,fail
"""


@pytest.fixture
def student_schema():
    return parse_schema(STUDENT_SCHEMA)


@pytest.fixture
def student_data(student_schema):
    return parse_dataset(STUDENT_ROWS, student_schema)


@pytest.fixture
def toy_schema():
    return parse_schema(TOY_SCHEMA)


@pytest.fixture
def toy_data(toy_schema):
    return parse_dataset(TOY_ROWS, toy_schema)
