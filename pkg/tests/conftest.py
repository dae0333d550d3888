import pytest

from genustax.cooccurrence import build_lexicon
from genustax.dictionary import load_dictionary
from genustax.evaluation import load_gold
from genustax.heuristics import HeuristicConfig
from genustax.hierarchy import load_hierarchy
from genustax.links import build_links, load_bilingual, load_english_index
from genustax.pipeline import Resources
from genustax.salience import build_salience

from pathlib import Path

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def mini_dict():
    return load_dictionary(DATA / "mini" / "dictionary.tsv", DATA / "mini" / "stopwords.txt")


@pytest.fixture(scope="session")
def eval_paths():
    base = DATA / "eval"
    return {
        "dict": base / "dictionary.tsv",
        "stopwords": base / "stopwords.txt",
        "hierarchy": base / "hierarchy.tsv",
        "bilingual": base / "bilingual.tsv",
        "english_index": base / "english_index.tsv",
        "gold": base / "gold.tsv",
    }


@pytest.fixture(scope="session")
def eval_dict(eval_paths):
    return load_dictionary(eval_paths["dict"], eval_paths["stopwords"])


@pytest.fixture(scope="session")
def eval_hierarchy(eval_paths):
    return load_hierarchy(eval_paths["hierarchy"])


@pytest.fixture(scope="session")
def eval_links(eval_paths, eval_hierarchy):
    return build_links(
        load_bilingual(eval_paths["bilingual"]),
        eval_hierarchy,
        load_english_index(eval_paths["english_index"]),
    )


@pytest.fixture(scope="session")
def eval_resources(eval_dict, eval_hierarchy, eval_links):
    return Resources(
        lexicon=build_lexicon(eval_dict),
        links=eval_links,
        hierarchy=eval_hierarchy,
        salience=build_salience(eval_dict, eval_links, eval_hierarchy),
    )


@pytest.fixture(scope="session")
def eval_gold(eval_paths, eval_dict):
    return load_gold(eval_paths["gold"], eval_dict)


@pytest.fixture(scope="session")
def default_config():
    return HeuristicConfig()


_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def record_acceptance(name: str, passed: bool) -> None:
    _ACCEPTANCE_RESULTS.append((name, "PASS" if passed else "FAIL"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    del exitstatus, config
    seen = {}
    for report in terminalreporter.stats.get("passed", []):
        if "test_acceptance" in report.nodeid:
            seen[report.nodeid.rsplit("::", 1)[-1]] = "PASS"
    for report in terminalreporter.stats.get("failed", []):
        if "test_acceptance" in report.nodeid:
            seen[report.nodeid.rsplit("::", 1)[-1]] = "FAIL"
    if not seen:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(seen, key=_criterion_order):
        terminalreporter.write_line(f"{seen[name]:4}  {name}")


def _criterion_order(name: str):
    digits = "".join(ch for ch in name if ch.isdigit())
    return (int(digits) if digits else 99, name)
