import pytest

from tcms import KnowledgeBase, PipelineConfig, compute_weight_matrix, datasets, train

ACCEPTANCE_RESULTS = []


@pytest.fixture
def tiny4():
    return datasets.tiny4()


@pytest.fixture
def tiny4_matrix(tiny4):
    return compute_weight_matrix(tiny4)


@pytest.fixture
def tiny4_kb(tiny4, tiny4_matrix):
    return KnowledgeBase.build(tiny4_matrix, tiny4.class_names, order=3)


@pytest.fixture
def tiny4_model(tiny4):
    return train(tiny4, PipelineConfig.bare(), order=3)


@pytest.fixture(scope="session")
def synthetic_corpus():
    return datasets.synthetic()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, elapsed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {name} ({elapsed:.2f}s){' - ' + detail if detail else ''}")
