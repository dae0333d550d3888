import pytest

from genustax.hierarchy import Concept, ConceptHierarchy
from genustax.links import (
    LinkError,
    LinkTable,
    build_links,
    load_bilingual,
    load_english_index,
    load_links,
    save_links,
    semantic_fields,
)


@pytest.fixture
def wine_hierarchy():
    return ConceptHierarchy(
        [
            Concept("entity", 3, ()),
            Concept("food", 13, ("entity",)),
            Concept("wine", 13, ("food",)),
            Concept("attr", 7, ("entity",)),
            Concept("wine_color", 7, ("attr",)),
            Concept("plant", 20, ("entity",)),
        ]
    )


class TestBuildLinks:
    def test_single_translation_two_synsets(self, wine_hierarchy):
        links = build_links(
            {"vin": {"wine"}},
            wine_hierarchy,
            {"wine": {"wine", "wine_color"}},
        )
        assert links.get("vin") == frozenset({"wine", "wine_color"})
        assert len(links.get("vin")) == 2

    def test_absent_and_unindexed_words(self, wine_hierarchy):
        links = build_links(
            {"sidra": {"cider"}},  # cider not in the index
            wine_hierarchy,
            {"wine": {"wine"}},
        )
        assert "sidra" not in links
        assert "nunca" not in links
        assert links.get("sidra") == frozenset()

    def test_shared_synset_unioned_once(self, wine_hierarchy):
        links = build_links(
            {"vino": {"wine", "plonk"}},
            wine_hierarchy,
            {"wine": {"wine"}, "plonk": {"wine"}},
        )
        assert links.get("vino") == frozenset({"wine"})

    def test_unresolved_concept_rejected(self, wine_hierarchy):
        with pytest.raises(LinkError, match="unknown concept"):
            build_links({"x": {"y"}}, wine_hierarchy, {"y": {"ghost"}})

    def test_monotone_under_bilingual_growth(self, wine_hierarchy):
        index = {"wine": {"wine"}, "plant": {"plant"}}
        small = build_links({"vino": {"wine"}}, wine_hierarchy, index)
        large = build_links(
            {"vino": {"wine"}, "planta": {"plant"}}, wine_hierarchy, index
        )
        for word, concepts in small.items():
            assert concepts <= large.get(word)


class TestSemanticFields:
    def test_vin_fields(self, wine_hierarchy):
        links = build_links(
            {"vin": {"wine"}}, wine_hierarchy, {"wine": {"wine", "wine_color"}}
        )
        assert semantic_fields(links, wine_hierarchy, "vin") == {13, 7}

    def test_unlinked_word_empty(self, wine_hierarchy):
        assert semantic_fields(LinkTable({}), wine_hierarchy, "x") == set()

    def test_three_concepts_one_file(self, wine_hierarchy):
        links = LinkTable({"comida": frozenset({"food", "wine", "entity"})})
        # food and wine share file 13; entity carries 3
        assert semantic_fields(links, wine_hierarchy, "comida") == {13, 3}
        links = LinkTable({"comida": frozenset({"food", "wine"})})
        assert semantic_fields(links, wine_hierarchy, "comida") == {13}


class TestPersistence:
    def test_round_trip(self, tmp_path, wine_hierarchy):
        links = build_links(
            {"vin": {"wine"}, "planta": {"plant"}},
            wine_hierarchy,
            {"wine": {"wine", "wine_color"}, "plant": {"plant"}},
        )
        path = tmp_path / "links.tsv"
        save_links(links, path)
        loaded = load_links(path, wine_hierarchy)
        assert loaded.links == links.links
        path2 = tmp_path / "links2.tsv"
        save_links(loaded, path2)
        assert path.read_bytes() == path2.read_bytes()

    def test_load_validates_against_hierarchy(self, tmp_path, wine_hierarchy):
        path = tmp_path / "links.tsv"
        path.write_text("vin\tghost\n", encoding="utf-8")
        with pytest.raises(LinkError, match="ghost"):
            load_links(path, wine_hierarchy)


class TestFileParsers:
    def test_bilingual_format(self, tmp_path):
        path = tmp_path / "bi.tsv"
        path.write_text("vin\twine\nvin\tplonk\n# comment\n", encoding="utf-8")
        assert load_bilingual(path) == {"vin": {"wine", "plonk"}}

    def test_bilingual_bad_line(self, tmp_path):
        path = tmp_path / "bi.tsv"
        path.write_text("justoneword\n", encoding="utf-8")
        with pytest.raises(LinkError, match="line 1"):
            load_bilingual(path)

    def test_english_index_format(self, tmp_path):
        path = tmp_path / "idx.tsv"
        path.write_text("wine\twine,wine_color\n", encoding="utf-8")
        assert load_english_index(path) == {"wine": {"wine", "wine_color"}}


def test_eval_fixture_vin_case(eval_links, eval_hierarchy):
    # the shipped bilingual file reproduces the vin/wine two-link case
    assert len(eval_links.get("vin")) == 2
    assert semantic_fields(eval_links, eval_hierarchy, "vin") == {13, 7}
    # every linked concept resolves
    for _, concepts in eval_links.items():
        for cid in concepts:
            assert cid in eval_hierarchy
