"""Ingestion: line parsing, token filtering, table building, snapshots."""
import gzip

import numpy as np
import pytest

from ngramlex.errors import CorruptSnapshot, DomainError, MalformedLine, MalformedRecord
from ngramlex.ingest import (
    FilterConfig,
    FrequencyTable,
    IngestReport,
    TokenRecord,
    build_year_tables,
    load_totalcounts,
    merge_year_tables,
    normalize_token,
    open_text_auto,
    parse_ngram_line,
    parse_snapshot,
    read_records,
    read_snapshot_file,
    snapshot_bytes,
    write_snapshot_file,
)

from support import DATA_DIR, random_table

FIXTURE = DATA_DIR / "ngrams_fixture.tsv"

# hand-tabulated before implementation; byte-exact targets
GOLDEN_1999 = "#year=1999\tL=19\nthe\t14\ndog\t3\nnaïve\t2\n".encode("utf-8")
GOLDEN_2000 = "#year=2000\tL=40\nthe\t20\ndog\t11\nwalk\t6\ncafé\t3\n".encode("utf-8")
GOLDEN_2001 = "#year=2001\tL=18\ncat\t10\nace\t4\nélan\t4\n".encode("utf-8")


class TestParseLine:
    def test_basic(self):
        assert parse_ngram_line("the\t1999\t10\t5") == TokenRecord("the", 1999, 10, 5)

    def test_crlf(self):
        assert parse_ngram_line("dog\t2000\t3\t1\r\n") == TokenRecord("dog", 2000, 3, 1)

    def test_blank_is_skip(self):
        assert parse_ngram_line("") is None
        assert parse_ngram_line("   \n") is None

    def test_negative_year(self):
        assert parse_ngram_line("a\t-44\t1\t1").year == -44

    @pytest.mark.parametrize(
        "line",
        [
            "too\tshort",
            "a\tb\tc\td\te",
            "mal 2000 bad 1",
            "a\t20x0\t1\t1",
            "a\t2000\tx\t1",
            "a\t2000\t1\ty",
            "\t2000\t1\t1",
            "a\t2000\t²\t1",  # non-ascii digit would crash int()
        ],
    )
    def test_malformed(self, line):
        with pytest.raises(MalformedLine):
            parse_ngram_line(line)


class TestNormalize:
    CFG = FilterConfig()

    def test_case_fold_merges(self):
        assert normalize_token("The", self.CFG) == "the"
        assert normalize_token("the", self.CFG) == "the"

    def test_latin_accents_pass(self):
        assert normalize_token("naïve", self.CFG) == "naïve"
        assert normalize_token("Élan", self.CFG) == "élan"

    def test_other_scripts_rejected(self):
        assert normalize_token("вода", self.CFG) is None

    def test_digits_rejected(self):
        assert normalize_token("run2", self.CFG) is None

    def test_tagged_rejected(self):
        assert normalize_token("cat_NOUN", self.CFG) is None
        assert normalize_token("_START_", self.CFG) is None

    def test_tagged_kept_when_configured(self):
        cfg = FilterConfig(reject_tagged=False)
        # underscore still fails the alphabet check
        assert normalize_token("cat_NOUN", cfg) is None

    def test_empty_rejected(self):
        assert normalize_token("", self.CFG) is None

    def test_ascii_strict(self):
        cfg = FilterConfig(ascii_strict=True)
        assert normalize_token("Cafe", cfg) == "cafe"
        assert normalize_token("café", cfg) is None

    def test_explicit_charset(self):
        cfg = FilterConfig(alphabet=frozenset("abc"))
        assert normalize_token("cab", cfg) == "cab"
        assert normalize_token("cad", cfg) is None

    def test_no_fold(self):
        cfg = FilterConfig(case_fold=False)
        assert normalize_token("The", cfg) == "The"

    def test_conflicting_policies(self):
        with pytest.raises(DomainError):
            FilterConfig(alphabet=frozenset("abc"), ascii_strict=True)
        with pytest.raises(DomainError):
            FilterConfig(alphabet="greek", ascii_strict=True)
        with pytest.raises(DomainError):
            FilterConfig(alphabet="")


class TestFixtureGolden:
    def _ingest(self):
        report = IngestReport()
        with open(FIXTURE, encoding="utf-8") as fh:
            tables = build_year_tables(
                read_records(fh, report=report), FilterConfig(), report
            )
        return tables, report

    def test_report_counters(self):
        _, report = self._ingest()
        assert report.lines_read == 20
        assert report.blank_lines == 1
        assert report.malformed_lines == 2
        assert report.records_parsed == 17
        assert report.records_accepted == 13
        assert report.records_rejected == 4
        assert len(report.malformed_examples) == 2

    def test_snapshots_byte_exact(self):
        tables, _ = self._ingest()
        assert set(tables) == {1999, 2000, 2001}
        assert snapshot_bytes(tables[1999]) == GOLDEN_1999
        assert snapshot_bytes(tables[2000]) == GOLDEN_2000
        assert snapshot_bytes(tables[2001]) == GOLDEN_2001

    def test_token_conservation(self):
        tables, _ = self._ingest()
        assert sum(t.total_tokens for t in tables.values()) == 77

    def test_strict_mode_raises_with_line_number(self):
        with open(FIXTURE, encoding="utf-8") as fh:
            with pytest.raises(MalformedLine) as exc_info:
                list(read_records(fh, strict=True))
        assert exc_info.value.lineno == 14

    def test_permutation_invariance(self):
        with open(FIXTURE, encoding="utf-8") as fh:
            records = list(read_records(fh))
        base = build_year_tables(records, FilterConfig())
        flipped = build_year_tables(records[::-1], FilterConfig())
        assert base == flipped

    def test_merge_matches_single_pass(self):
        with open(FIXTURE, encoding="utf-8") as fh:
            records = list(read_records(fh))
        whole = build_year_tables(records, FilterConfig())
        cfg = FilterConfig()
        parts = [build_year_tables(records[:9], cfg), build_year_tables(records[9:], cfg)]
        assert merge_year_tables(parts) == whole
        assert merge_year_tables(parts[::-1]) == whole


class TestFrequencyTable:
    def test_totals(self):
        t = FrequencyTable(1900, {"a": 2, "b": 1})
        assert t.total_tokens == 3
        assert t.distinct_tokens == 2

    def test_declared_total_checked(self):
        with pytest.raises(CorruptSnapshot):
            FrequencyTable(1900, {"a": 2}, total_tokens=3)

    def test_nonpositive_count(self):
        with pytest.raises(DomainError):
            FrequencyTable(1900, {"a": 0})

    def test_sort_ties_by_byte_order(self):
        t = FrequencyTable(2001, {"élan": 4, "cat": 10, "ace": 4})
        assert t.sorted_items() == [("cat", 10), ("ace", 4), ("élan", 4)]


class TestSnapshotRoundTrip:
    def test_random_tables(self):
        rng = np.random.default_rng(1234)
        for i in range(100):
            table = random_table(rng, year=int(rng.integers(1500, 2100)))
            blob = snapshot_bytes(table)
            back = parse_snapshot(blob)
            assert back == table
            assert back.total_tokens == table.total_tokens
            # serialization is idempotent
            assert snapshot_bytes(back) == blob

    def test_file_round_trip(self, tmp_path):
        table = FrequencyTable(1999, {"the": 14, "dog": 3, "naïve": 2})
        path = write_snapshot_file(table, tmp_path / "y1999.tsv")
        assert path.read_bytes() == GOLDEN_1999
        assert read_snapshot_file(path) == table

    @pytest.mark.parametrize(
        "blob",
        [
            b"",
            b"no header\n",
            b"#year=1999\n",
            b"#year=19x9\tL=3\na\t3\n",
            b"#year=1999\tL=x\na\t3\n",
            b"#year=1999\tL=3\na\t3\na\t1\n",  # duplicate token
            b"#year=1999\tL=4\na\t3\n",  # total mismatch
            b"#year=1999\tL=3\na\t0\n",
            b"#year=1999\tL=3\na\n",
            b"#year=1999\tL=3\na\t\xc2\n",  # invalid utf-8
        ],
    )
    def test_corrupt_snapshots(self, blob):
        with pytest.raises(CorruptSnapshot):
            parse_snapshot(blob)


class TestOpenAuto:
    def test_gzip_detected_by_magic(self, tmp_path):
        # extension is deliberately wrong; only magic bytes matter
        path = tmp_path / "data.tsv"
        path.write_bytes(gzip.compress("the\t1999\t10\t5\n".encode("utf-8")))
        with open_text_auto(path) as fh:
            assert fh.read() == "the\t1999\t10\t5\n"

    def test_plain_text(self, tmp_path):
        path = tmp_path / "data.tsv.gz"
        path.write_text("dog\t2000\t3\t1\n", encoding="utf-8")
        with open_text_auto(path) as fh:
            assert fh.read() == "dog\t2000\t3\t1\n"


class TestTotalCounts:
    def test_parse(self):
        text = "1505,32059,231,1\t1507,49586,477,1\n"
        out = load_totalcounts(text)
        assert out == {1505: (32059, 231, 1), 1507: (49586, 477, 1)}

    def test_duplicate_year(self):
        with pytest.raises(MalformedRecord):
            load_totalcounts("1505,1,1,1\t1505,2,2,2")

    def test_malformed_record(self):
        with pytest.raises(MalformedRecord):
            load_totalcounts("1505,1,1")
        with pytest.raises(MalformedRecord):
            load_totalcounts("1505,a,1,1")
