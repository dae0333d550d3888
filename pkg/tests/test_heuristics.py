import math

import numpy as np
import pytest

from genustax.cooccurrence import WeightScheme, WindowSpec, build_lexicon
from genustax.dictionary import build_dictionary, genus_candidates, parse_sense_line
from genustax.heuristics import (
    HeuristicConfig,
    ScoreAssignment,
    candidate_semantic_files,
    h1_monosemous,
    h2_sense_ordering,
    h3_semantic_domain,
    h4_word_matching,
    h5_simple_cooccurrence,
    h6_cooccurrence_vectors,
    h7_semantic_vectors,
    h8_conceptual_distance,
)
from genustax.hierarchy import Concept, ConceptHierarchy
from genustax.links import LinkTable
from genustax.salience import SalienceTable, build_salience

import oracles

SCHEMES = list(WeightScheme)


def sense(headword, sense_no, definition, genus="g", pos="n", domain="-"):
    return parse_sense_line(
        "\t".join([headword, str(sense_no), pos, domain, genus, definition]), 1
    )


def tiny_dict(*senses, stopwords=("de", "la", "el", "que", "se", "y", "con")):
    return build_dictionary(list(senses), stopwords=frozenset(stopwords))


class TestScoreAssignment:
    def test_all_zero_demoted_to_abstention(self):
        a = ScoreAssignment.make(4, {"x:1": 0.0, "x:2": 0.0})
        assert a.abstained and a.scores == {}

    def test_empty_is_abstention(self):
        assert ScoreAssignment.make(5, {}).abstained

    def test_rejects_bad_scores(self):
        with pytest.raises(ValueError):
            ScoreAssignment.make(5, {"x:1": -1.0})
        with pytest.raises(ValueError):
            ScoreAssignment.make(5, {"x:1": float("nan")})

    def test_abstained_iff_empty(self):
        live = ScoreAssignment.make(2, {"x:1": 1.0, "x:2": 0.0})
        assert not live.abstained and live.scores


class TestH1:
    def test_single_candidate_scores_one(self):
        arbusto = sense("arbusto", 1, "planta leñosa")
        result = h1_monosemous([arbusto])
        assert result.scores == {"arbusto:1": 1.0}

    def test_polysemous_abstains(self):
        candidates = [sense("planta", i, "x") for i in range(1, 14)]
        d = tiny_dict(*candidates)
        assert h1_monosemous(candidates).abstained

    def test_no_candidates_abstains(self):
        assert h1_monosemous([]).abstained


class TestH2:
    def test_inverse_rank(self):
        candidates = [sense("p", i, "x") for i in range(1, 4)]
        result = h2_sense_ordering(candidates)
        assert result.scores == {
            "p:1": 1.0,
            "p:2": 0.5,
            "p:3": pytest.approx(1 / 3),
        }

    def test_single_candidate(self):
        assert h2_sense_ordering([sense("p", 1, "x")]).scores == {"p:1": 1.0}

    def test_two_entries_ranked_independently(self):
        d = tiny_dict(
            sense("planta", 1, "a"),
            sense("planta", 2, "b"),
            sense("arbusto", 1, "c"),
            sense("bonsai", 1, "planta y arbusto así cultivado", genus="planta,arbusto"),
        )
        candidates = genus_candidates(d, d.sense("bonsai:1"))
        result = h2_sense_ordering(candidates)
        # arbusto:1 ranks by its own entry position, not the pool position
        assert result.scores["arbusto:1"] == 1.0
        assert result.scores["planta:1"] == 1.0
        assert result.scores["planta:2"] == 0.5

    def test_never_abstains_on_candidates(self):
        assert not h2_sense_ordering([sense("p", 3, "x")]).abstained


class TestH3:
    def test_tag_match(self):
        hyponym = sense("jarabe", 1, "medicina dulce", domain="med.")
        cands = [
            sense("medicina", 1, "ciencia"),
            sense("medicina", 2, "sustancia", domain="med."),
        ]
        result = h3_semantic_domain(hyponym, cands)
        assert result.scores == {"medicina:1": 0.0, "medicina:2": 1.0}

    def test_untagged_hyponym_abstains(self):
        hyponym = sense("x", 1, "y")
        assert h3_semantic_domain(hyponym, [sense("z", 1, "w", domain="med.")]).abstained

    def test_tie_passed_downstream(self):
        hyponym = sense("x", 1, "y", domain="der.")
        cands = [
            sense("z", 1, "a", domain="der."),
            sense("z", 2, "b", domain="der."),
        ]
        result = h3_semantic_domain(hyponym, cands)
        assert result.scores == {"z:1": 1.0, "z:2": 1.0}

    def test_no_sharer_abstains(self):
        hyponym = sense("x", 1, "y", domain="med.")
        assert h3_semantic_domain(hyponym, [sense("z", 1, "a", domain="der.")]).abstained


class TestH4:
    def test_disjoint_definitions_abstain(self):
        d = tiny_dict(
            sense("a", 1, "uno dos tres"),
            sense("b", 1, "cuatro cinco seis"),
        )
        result = h4_word_matching(d, d.sense("a:1"), [d.sense("b:1")], "lemma")
        assert result.abstained

    def test_hand_intersection(self):
        d = tiny_dict(
            sense("x", 1, "vino beber"),
            sense("y", 1, "beber licor"),
        )
        result = h4_word_matching(d, d.sense("x:1"), [d.sense("y:1")], "lemma")
        assert result.scores == {"y:1": 1.0}

    def test_prefix4_matches_inflection(self):
        d = tiny_dict(
            sense("x", 1, "planta cultivado"),
            sense("y", 1, "cultivar piedra"),
        )
        lemma = h4_word_matching(d, d.sense("x:1"), [d.sense("y:1")], "lemma")
        prefix = h4_word_matching(d, d.sense("x:1"), [d.sense("y:1")], "prefix4")
        assert lemma.abstained
        assert prefix.scores == {"y:1": 1.0}

    def test_headwords_included(self):
        d = tiny_dict(
            sense("vino", 1, "bebida fermentada"),
            sense("tinto", 1, "vino oscuro"),
        )
        result = h4_word_matching(d, d.sense("tinto:1"), [d.sense("vino:1")], "lemma")
        # the candidate headword "vino" appears in the hyponym's definition
        assert result.scores == {"vino:1": 1.0}

    def test_multiset_counts(self):
        d = tiny_dict(
            sense("x", 1, "uva uva uva"),
            sense("y", 1, "uva uva"),
        )
        result = h4_word_matching(d, d.sense("x:1"), [d.sense("y:1")], "lemma")
        assert result.scores == {"y:1": 2.0}


@pytest.fixture(scope="module")
def mini_lexicons(request):
    return {}


class TestH5:
    def test_all_unseen_abstains(self, mini_dict):
        lex = build_lexicon(mini_dict)
        d2senses = [
            sense("qq", 1, "palabra desconocida totalmente"),
            sense("rr", 1, "otra frase ignota"),
        ]
        d2 = tiny_dict(*d2senses)
        result = h5_simple_cooccurrence(
            lex, d2, d2.sense("qq:1"), [d2.sense("rr:1")], WeightScheme.FREQUENCY
        )
        assert result.abstained

    def test_single_word_definitions_equal_cw(self):
        corpus = tiny_dict(
            sense("w1", 1, "alfa beta"),
            sense("w2", 1, "alfa beta gama"),
        )
        lex = build_lexicon(corpus)
        probe = tiny_dict(sense("o", 1, "alfa"), sense("e", 1, "beta"))
        for scheme in SCHEMES:
            result = h5_simple_cooccurrence(
                lex, probe, probe.sense("o:1"), [probe.sense("e:1")], scheme
            )
            # expected: cw over the 2x2 word lists {o,alfa} x {e,beta}
            expected = lex.cw("alfa", "beta", scheme)
            assert result.scores["e:1"] == pytest.approx(expected)

    @pytest.mark.parametrize("scheme", SCHEMES)
    def test_fixture_matches_double_loop_oracle(self, eval_dict, scheme):
        lex = build_lexicon(eval_dict)
        for sense_, candidates in _pools(eval_dict)[:30]:
            result = h5_simple_cooccurrence(lex, eval_dict, sense_, candidates, scheme)
            for cand in candidates:
                expected = oracles.h5_score(lex, eval_dict, sense_, cand, scheme)
                got = result.scores.get(cand.key, 0.0) if not result.abstained else 0.0
                assert got == pytest.approx(expected, rel=1e-9, abs=1e-12)

    def test_rescaling_cw_preserves_ranking(self, eval_dict):
        # frequency vs doubled frequency: identical candidate ordering
        lex = build_lexicon(eval_dict)
        for sense_, candidates in _pools(eval_dict)[:10]:
            result = h5_simple_cooccurrence(
                lex, eval_dict, sense_, candidates, WeightScheme.FREQUENCY
            )
            if result.abstained:
                continue
            order = sorted(result.scores, key=result.scores.get)
            scaled = {k: v * 7.5 for k, v in result.scores.items()}
            assert sorted(scaled, key=scaled.get) == order


def _pools(d):
    out = []
    for s in d.senses:
        candidates = genus_candidates(d, s)
        if candidates:
            out.append((s, candidates))
    return out


class TestH6:
    def test_identical_one_word_definitions_cosine_one(self):
        corpus = tiny_dict(
            sense("w1", 1, "alfa beta"),
            sense("w2", 1, "alfa gama"),
        )
        lex = build_lexicon(corpus)
        probe = tiny_dict(sense("o", 1, "alfa"), sense("e", 1, "alfa"))
        result = h6_cooccurrence_vectors(
            lex, probe, probe.sense("o:1"), [probe.sense("e:1")],
            WeightScheme.FREQUENCY, "cosine",
        )
        assert result.scores["e:1"] == pytest.approx(1.0)

    def test_empty_vectors_abstain(self, mini_dict):
        lex = build_lexicon(mini_dict)
        probe = tiny_dict(sense("o", 1, "inexistente"), sense("e", 1, "tampoco"))
        result = h6_cooccurrence_vectors(
            lex, probe, probe.sense("o:1"), [probe.sense("e:1")],
            WeightScheme.FREQUENCY, "dot",
        )
        assert result.abstained

    @pytest.mark.parametrize("scheme", SCHEMES)
    def test_dot_matches_sparse_oracle(self, mini_dict, scheme):
        lex = build_lexicon(mini_dict)
        for sense_, candidates in _pools(mini_dict):
            result = h6_cooccurrence_vectors(
                lex, mini_dict, sense_, candidates, scheme, "dot"
            )
            own = oracles.h6_vectors(lex, mini_dict, sense_, scheme)
            for cand in candidates:
                other = oracles.h6_vectors(lex, mini_dict, cand, scheme)
                expected = oracles.sparse_dot(own, other)
                if result.abstained:
                    assert expected == pytest.approx(0.0, abs=1e-12)
                else:
                    got = result.scores.get(cand.key)
                    if got is None:
                        assert not other
                    else:
                        assert got == pytest.approx(expected, rel=1e-9, abs=1e-12)

    def test_euclidean_converts_to_similarity(self):
        corpus = tiny_dict(
            sense("w1", 1, "alfa beta"),
            sense("w2", 1, "alfa gama"),
        )
        lex = build_lexicon(corpus)
        probe = tiny_dict(sense("o", 1, "alfa"), sense("e", 1, "alfa"))
        result = h6_cooccurrence_vectors(
            lex, probe, probe.sense("o:1"), [probe.sense("e:1")],
            WeightScheme.FREQUENCY, "euclidean",
        )
        assert result.scores["e:1"] == pytest.approx(1.0)  # identical vectors: d=0


class TestH7:
    def make_table(self):
        vec13 = np.zeros(25)
        vec13[13] = 2.0
        vec6 = np.zeros(25)
        vec6[6] = 1.5
        return SalienceTable({"dulce": vec13, "hierro": vec6})

    def test_dominant_slot_ranks_first(self):
        table = self.make_table()
        d = tiny_dict(
            sense("o", 1, "dulce"),
            sense("e", 1, "dulce dulce"),
            sense("e2", 1, "hierro"),
        )
        result = h7_semantic_vectors(
            table, d, d.sense("o:1"), [d.sense("e:1"), d.sense("e2:1")], "cosine"
        )
        assert result.scores["e:1"] == pytest.approx(1.0)
        assert result.scores["e2:1"] == pytest.approx(0.0)

    def test_zero_vector_candidate_skipped(self):
        table = self.make_table()
        d = tiny_dict(sense("o", 1, "dulce"), sense("e", 1, "nada"))
        result = h7_semantic_vectors(table, d, d.sense("o:1"), [d.sense("e:1")], "dot")
        assert result.abstained

    def test_zero_hyponym_vector_abstains(self):
        table = self.make_table()
        d = tiny_dict(sense("o", 1, "nada"), sense("e", 1, "dulce"))
        assert h7_semantic_vectors(table, d, d.sense("o:1"), [d.sense("e:1")], "dot").abstained

    def test_fixture_hand_cosine(self, eval_dict, eval_resources):
        table = eval_resources.salience
        pools = {s.key: (s, genus_candidates(eval_dict, s)) for s in eval_dict.senses}
        sense_, candidates = pools["témpera:1"]
        result = h7_semantic_vectors(table, eval_dict, sense_, candidates, "cosine")
        # hand-accumulate the 25-slot vectors and take the cosine
        def vec(s):
            from genustax.dictionary import content_words
            total = np.zeros(25)
            for w in content_words(eval_dict, s, include_headword=True):
                v = table.get(w)
                if v is not None:
                    total += v
            return total
        own = vec(sense_)
        for cand in candidates:
            other = vec(cand)
            if not other.any():
                assert cand.key not in result.scores
                continue
            expected = float(own @ other) / (np.linalg.norm(own) * np.linalg.norm(other))
            assert result.scores[cand.key] == pytest.approx(expected)


class TestH8:
    def make_world(self):
        h = ConceptHierarchy(
            [
                Concept("top", 3, ()),
                Concept("mid", 13, ("top",)),
                Concept("leaf", 13, ("mid",)),
                Concept("attr", 7, ("top",)),
                Concept("tint", 7, ("attr",)),
            ]
        )
        return h

    def test_unlinked_hyponym_abstains(self):
        h = self.make_world()
        links = LinkTable({"genus": frozenset({"mid"})})
        d = tiny_dict(sense("hypo", 1, "x", genus="genus"), sense("genus", 1, "y"))
        result = h8_conceptual_distance(
            h, links, d.sense("hypo:1"), [d.sense("genus:1")]
        )
        assert result.abstained

    def test_shared_concept_depth_three(self):
        h = self.make_world()
        links = LinkTable({"hypo": frozenset({"leaf"}), "genus": frozenset({"leaf"})})
        d = tiny_dict(sense("hypo", 1, "x", genus="genus"), sense("genus", 1, "y"))
        result = h8_conceptual_distance(h, links, d.sense("hypo:1"), [d.sense("genus:1")])
        # depth(leaf)=3: distance 1/3, score 1/(1 + 1/3) = 0.75
        assert result.scores["genus:1"] == pytest.approx(0.75)

    def test_candidate_without_links_skipped(self):
        h = self.make_world()
        links = LinkTable({"hypo": frozenset({"leaf"})})
        d = tiny_dict(sense("hypo", 1, "x", genus="genus"), sense("genus", 1, "y"))
        assert h8_conceptual_distance(
            h, links, d.sense("hypo:1"), [d.sense("genus:1")]
        ).abstained

    def test_sense_files_restrict_candidate_concepts(self, eval_dict, eval_links, eval_hierarchy):
        # the two vino senses carry genus lemmas pointing at different files
        pools = {s.key: s for s in eval_dict.senses}
        vino1, vino2 = pools["vino:1"], pools["vino:2"]
        assert candidate_semantic_files(eval_links, eval_hierarchy, vino1) == {13}
        assert candidate_semantic_files(eval_links, eval_hierarchy, vino2) == {7}

    def test_food_subtree_beats_attribute_for_beverage_word(
        self, eval_dict, eval_links, eval_hierarchy
    ):
        # cerveza links only into the food subtree; score it against the two
        # vino senses and brute-force the restricted minimum over the DAG
        cerveza = next(s for s in eval_dict.senses if s.headword == "cerveza")
        candidates = [eval_dict.sense("vino:1"), eval_dict.sense("vino:2")]
        result = h8_conceptual_distance(eval_hierarchy, eval_links, cerveza, candidates)
        by_key = {c.key: c for c in candidates}
        for key, score in result.scores.items():
            cand = by_key[key]
            files = candidate_semantic_files(eval_links, eval_hierarchy, cand)
            targets = [
                c for c in sorted(eval_links.get(cand.headword))
                if eval_hierarchy.semantic_file(c) in files
            ] or sorted(eval_links.get(cand.headword))
            best = min(
                d
                for c1 in sorted(eval_links.get(cerveza.headword))
                for c2 in targets
                if (d := oracles.min_path_cost(eval_hierarchy, c1, c2)) is not None
            )
            assert score == pytest.approx(1.0 / (1.0 + best))
        assert result.scores["vino:1"] > result.scores["vino:2"]

    def test_noisy_double_link_scores_both_senses_equally(
        self, eval_dict, eval_links, eval_hierarchy
    ):
        # moscatel inherits wine's two synsets, so each vino sense finds a
        # shared concept: the noisy link is tolerated, never fatal
        moscatel = next(s for s in eval_dict.senses if s.headword == "moscatel")
        candidates = genus_candidates(eval_dict, moscatel)
        result = h8_conceptual_distance(eval_hierarchy, eval_links, moscatel, candidates)
        assert result.scores["vino:1"] == pytest.approx(result.scores["vino:2"])

    def test_ranking_invariant_under_distance_inversion(self):
        # argmax of 1/(1+d) is argmin of d by monotonicity
        distances = {"a": 0.3, "b": 1.7, "c": 0.9}
        scores = {k: 1.0 / (1.0 + v) for k, v in distances.items()}
        assert min(distances, key=distances.get) == max(scores, key=scores.get)


class TestHeuristicConfig:
    def test_round_trip_mapping(self):
        config = HeuristicConfig(
            window=WindowSpec(7),
            scheme=WeightScheme.MUTUAL_INFORMATION,
            similarity="dot",
            match_variant="prefix4",
        )
        assert HeuristicConfig.from_mapping(config.to_mapping()) == config

    def test_save_format(self, tmp_path):
        path = tmp_path / "config.txt"
        HeuristicConfig().save(path)
        text = path.read_text(encoding="utf-8")
        assert "window=whole" in text and "scheme=association_ratio" in text

    def test_validation(self):
        with pytest.raises(ValueError):
            HeuristicConfig(similarity="manhattan")
        with pytest.raises(ValueError):
            HeuristicConfig(match_variant="prefix9")


def test_scores_only_for_supplied_candidates(eval_dict, eval_resources, default_config):
    from genustax.pipeline import score_sense

    for sense_, candidates in _pools(eval_dict)[:20]:
        keys = {c.key for c in candidates}
        for assignment in score_sense(
            eval_dict, eval_resources, default_config, sense_, candidates
        ):
            assert set(assignment.scores) <= keys
            for value in assignment.scores.values():
                assert value >= 0.0 and math.isfinite(value)
            assert assignment.abstained == (not assignment.scores)
