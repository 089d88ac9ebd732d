import pytest

from lieimage import engine, settings
from lieimage.constants import BUDGET_ENV_VAR
from lieimage.gf import FieldDescriptor, field_from_order


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
    settings.use(None)
    yield
    settings.use(None)
    engine.shutdown_pool()


@pytest.fixture
def f3() -> FieldDescriptor:
    return field_from_order(3)


@pytest.fixture
def f5() -> FieldDescriptor:
    return field_from_order(5)


@pytest.fixture
def f7() -> FieldDescriptor:
    return field_from_order(7)


@pytest.fixture
def f9() -> FieldDescriptor:
    return field_from_order(9)
