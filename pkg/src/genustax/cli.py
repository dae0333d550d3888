"""Command-line pipeline: build resources, disambiguate, evaluate, stats.

Stages communicate through files in one output directory so that derived
resources can be reused across configurations:

    genustax build        -> lexicon.tsv [links.tsv salience.tsv]
    genustax disambiguate -> decisions.tsv taxonomy.tsv
    genustax evaluate     -> heuristics_{overall,polysemous}.{txt,tsv}
                             ablation_<scope>.{txt,tsv}
    genustax stats        -> dictionary summary on stdout

Options may come from a flat key=value config file (--config); command-line
flags win over the file. All outputs are written atomically and are
byte-identical across reruns on identical inputs.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from .cooccurrence import WindowSpec, build_lexicon, load_lexicon, save_lexicon
from .dictionary import DictionaryFormatError, compute_stats, load_dictionary
from .ensemble import build_taxonomy, save_decisions, save_taxonomy
from .evaluation import (
    EvaluationError,
    ablation_table,
    heuristic_table,
    load_gold,
    render_text_table,
    render_tsv_table,
)
from .heuristics import HeuristicConfig
from .hierarchy import HierarchyError, load_hierarchy
from .links import LinkError, build_links, load_bilingual, load_english_index, load_links, save_links
from .pipeline import (
    ALL_HEURISTICS,
    PipelineError,
    Resources,
    disambiguate,
    parse_heuristic_mask,
)
from .salience import build_salience, load_salience, save_salience

CONFIG_KEYS = (
    "dict", "stopwords", "bilingual", "english_index", "hierarchy", "gold",
    "out", "heuristics", "window", "scheme", "similarity", "match_variant",
    "h2_decay", "scope",
)


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep or key not in CONFIG_KEYS:
                raise ValueError(f"{path}: line {lineno}: unknown config line {line!r}")
            values[key] = value.strip()
    return values


def _settings(args: argparse.Namespace) -> dict[str, str]:
    """Config-file values overridden by any explicitly given flags."""
    values = load_config_file(args.config) if getattr(args, "config", None) else {}
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = str(flag)
    return values


def _heuristic_config(settings: dict[str, str]) -> HeuristicConfig:
    mapping = {
        k: settings[k]
        for k in ("window", "scheme", "similarity", "match_variant", "h2_decay")
        if k in settings
    }
    return HeuristicConfig.from_mapping(mapping)


def _mask(settings: dict[str, str]) -> frozenset[int]:
    if "heuristics" in settings:
        return parse_heuristic_mask(settings["heuristics"])
    return ALL_HEURISTICS


def _require(settings: dict[str, str], key: str, why: str) -> Path:
    if key not in settings or not settings[key]:
        raise PipelineError(f"--{key.replace('_', '-')} is required {why}")
    path = Path(settings[key])
    if not path.exists():
        raise PipelineError(f"{key.replace('_', '-')} file not found: {path}")
    return path


def _load_dict(settings):
    dict_path = _require(settings, "dict", "to locate the dictionary")
    stop_path = None
    if settings.get("stopwords"):
        stop_path = _require(settings, "stopwords", "")
    return load_dictionary(dict_path, stop_path)


def _out_dir(settings) -> Path:
    if "out" not in settings or not settings["out"]:
        raise PipelineError("--out directory is required")
    return Path(settings["out"])


def cmd_build(args: argparse.Namespace) -> int:
    settings = _settings(args)
    mask = _mask(settings)
    config = _heuristic_config(settings)
    d = _load_dict(settings)
    out = _out_dir(settings)

    lexicon = build_lexicon(d, config.window)
    out.mkdir(parents=True, exist_ok=True)
    save_path = out / "lexicon.tsv"
    atomic_write(save_path, _render_file(save_lexicon, lexicon))

    if mask & {7, 8}:
        why = "because heuristics 7/8 are enabled"
        hierarchy_path = _require(settings, "hierarchy", why)
        bilingual_path = _require(settings, "bilingual", why)
        index_path = _require(settings, "english_index", why)
        hierarchy = load_hierarchy(hierarchy_path)
        links = build_links(load_bilingual(bilingual_path), hierarchy, load_english_index(index_path))
        atomic_write(out / "links.tsv", _render_file(save_links, links))
        if 7 in mask:
            salience = build_salience(d, links, hierarchy)
            atomic_write(out / "salience.tsv", _render_file(save_salience, salience))
    return 0


def _render_file(saver, obj) -> str:
    """Run a file-writing helper into a string (for atomic emission)."""
    with tempfile.TemporaryDirectory() as tmpdir:
        tmp = Path(tmpdir) / "out"
        saver(obj, tmp)
        return tmp.read_text(encoding="utf-8")


def _load_resources(settings, mask, d) -> Resources:
    out = _out_dir(settings)
    lexicon = links = hierarchy = salience = None
    if mask & {5, 6}:
        path = out / "lexicon.tsv"
        if not path.exists():
            raise PipelineError(f"lexicon not built: {path} (run `genustax build`)")
        lexicon = load_lexicon(path)
    if mask & {7, 8}:
        hierarchy_path = _require(settings, "hierarchy", "because heuristics 7/8 are enabled")
        hierarchy = load_hierarchy(hierarchy_path)
        path = out / "links.tsv"
        if not path.exists():
            raise PipelineError(f"link table not built: {path} (run `genustax build`)")
        links = load_links(path, hierarchy)
    if 7 in mask:
        path = out / "salience.tsv"
        if not path.exists():
            raise PipelineError(f"salience table not built: {path} (run `genustax build`)")
        salience = load_salience(path)
    return Resources(lexicon=lexicon, links=links, hierarchy=hierarchy, salience=salience)


def cmd_disambiguate(args: argparse.Namespace) -> int:
    settings = _settings(args)
    mask = _mask(settings)
    config = _heuristic_config(settings)
    d = _load_dict(settings)
    resources = _load_resources(settings, mask, d)
    out = _out_dir(settings)

    decisions = disambiguate(d, resources, config, mask)
    atomic_write(out / "decisions.tsv", _render_file(save_decisions, decisions))
    taxonomy = build_taxonomy(d, decisions)
    atomic_write(out / "taxonomy.tsv", _render_file(save_taxonomy, taxonomy))
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    settings = _settings(args)
    config = _heuristic_config(settings)
    d = _load_dict(settings)
    resources = _load_resources(settings, ALL_HEURISTICS, d)
    out = _out_dir(settings)
    gold_path = _require(settings, "gold", "to score against")
    gold = load_gold(gold_path, d)
    scope = settings.get("scope", "all")

    tables = heuristic_table(d, resources, gold, config)
    titles = {"all": "Overall results", "polysemous": "Results for polysemous genus"}
    names = {"all": "overall", "polysemous": "polysemous"}
    for table_scope, columns in tables.items():
        atomic_write(
            out / f"heuristics_{names[table_scope]}.txt",
            render_text_table(columns, titles[table_scope]),
        )
        atomic_write(out / f"heuristics_{names[table_scope]}.tsv", render_tsv_table(columns))

    ablation = ablation_table(d, resources, gold, config, scope=scope)
    atomic_write(
        out / f"ablation_{names[scope]}.txt",
        render_text_table(ablation, f"Sum minus one heuristic ({names[scope]})"),
    )
    atomic_write(out / f"ablation_{names[scope]}.tsv", render_tsv_table(ablation))
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    settings = _settings(args)
    d = _load_dict(settings)
    stats = compute_stats(d)
    print(f"headwords\t{stats.headword_count}")
    print(f"senses\t{stats.sense_count}")
    print(f"total words\t{stats.total_word_count}")
    print(f"avg definition length\t{stats.avg_definition_length:.2f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genustax",
        description="Disambiguate dictionary genus terms and build sense taxonomies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat key=value config file (flags win)")
        p.add_argument("--dict", help="dictionary file (interchange format)")
        p.add_argument("--stopwords", help="stopword file, one lemma per line")
        p.add_argument("--out", help="output directory shared by all stages")
        p.add_argument("--heuristics", help="enabled heuristics, e.g. 1,2,4-8")
        p.add_argument("--window", help="cooccurrence window: whole or odd n >= 3")
        p.add_argument(
            "--scheme",
            choices=["frequency", "mutual_information", "association_ratio"],
            help="pair weighting scheme",
        )
        p.add_argument(
            "--similarity", choices=["dot", "cosine", "euclidean"],
            help="vector similarity for heuristics 6/7",
        )
        p.add_argument(
            "--match-variant", dest="match_variant", choices=["lemma", "prefix4"],
            help="word-matching key for heuristic 4",
        )
        p.add_argument("--bilingual", help="source->english bilingual file")
        p.add_argument(
            "--english-index", dest="english_index",
            help="english word -> concept ids file",
        )
        p.add_argument("--hierarchy", help="concept hierarchy file")

    p_build = sub.add_parser("build", help="derive lexicon / links / salience")
    common(p_build)
    p_build.set_defaults(func=cmd_build)

    p_dis = sub.add_parser("disambiguate", help="emit decisions and taxonomy")
    common(p_dis)
    p_dis.set_defaults(func=cmd_disambiguate)

    p_eval = sub.add_parser("evaluate", help="emit heuristic and ablation tables")
    common(p_eval)
    p_eval.add_argument("--gold", help="gold standard file")
    p_eval.add_argument("--scope", choices=["all", "polysemous"], help="ablation scope")
    p_eval.set_defaults(func=cmd_evaluate)

    p_stats = sub.add_parser("stats", help="print dictionary statistics")
    common(p_stats)
    p_stats.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        DictionaryFormatError,
        HierarchyError,
        LinkError,
        EvaluationError,
        PipelineError,
        ValueError,
        OSError,
    ) as exc:
        print(f"genustax: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
