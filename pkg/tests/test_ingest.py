import json

import pytest

from stonklab.errors import InputFormatError
from stonklab.ingest import (
    LabelRecord,
    comment_volume,
    filter_window,
    read_labels,
    read_posts,
    read_prices,
    read_trends,
    write_labels,
    write_posts,
    write_prices,
    write_trends,
)
from stonklab.sentiment import Post, SentimentLabel
from stonklab.series import DailySeries

from conftest import day, mk_series


def jsonl_line(post_id, created, body):
    return json.dumps({"id": post_id, "created_utc": created, "body": body}) + "\n"


class TestReadPosts:
    def test_empty_file(self, tmp_path):
        path = tmp_path / "posts.jsonl"
        path.write_text("")
        result = read_posts(path)
        assert result.posts == ()
        assert result.malformed == 0

    def test_sorted_by_timestamp(self, tmp_path):
        path = tmp_path / "posts.jsonl"
        path.write_text(
            jsonl_line("c", 300, "third")
            + jsonl_line("a", 100, "first")
            + jsonl_line("b", 200, "second")
        )
        result = read_posts(path)
        assert [p.id for p in result.posts] == ["a", "b", "c"]

    def test_malformed_counted_with_tolerant_threshold(self, tmp_path):
        path = tmp_path / "posts.jsonl"
        path.write_text(jsonl_line("a", 100, "ok") + "{not json\n")
        result = read_posts(path, malformed_threshold=1.0)
        assert len(result.posts) == 1
        assert result.malformed == 1
        assert result.total_lines == 2

    def test_default_threshold_rejects_dirty_files(self, tmp_path):
        path = tmp_path / "posts.jsonl"
        path.write_text(jsonl_line("a", 100, "ok") + "{not json\n")
        with pytest.raises(InputFormatError, match="malformed"):
            read_posts(path)

    def test_missing_fields_and_duplicates_are_malformed(self, tmp_path):
        path = tmp_path / "posts.jsonl"
        path.write_text(
            jsonl_line("a", 100, "ok")
            + json.dumps({"id": "b", "body": "no timestamp"}) + "\n"
            + jsonl_line("a", 300, "duplicate id")
            + json.dumps({"id": "", "created_utc": 1, "body": "empty id"}) + "\n"
        )
        result = read_posts(path, malformed_threshold=1.0)
        assert [p.id for p in result.posts] == ["a"]
        assert result.malformed == 3

    def test_emoji_and_newlines_survive(self, tmp_path):
        path = tmp_path / "posts.jsonl"
        body = "to the moon \U0001F680\nsecond line"
        path.write_text(jsonl_line("a", 100, body))
        result = read_posts(path)
        assert result.posts[0].text == body


class TestReadSeriesCsv:
    def test_prices_two_rows(self, tmp_path):
        path = tmp_path / "prices.csv"
        path.write_text("date,close\n2021-01-04,17.25\n2021-01-05,19.5\n")
        series = read_prices(path)
        assert len(series) == 2
        assert series.values == (17.25, 19.5)

    def test_duplicate_date_names_the_date(self, tmp_path):
        path = tmp_path / "prices.csv"
        path.write_text("date,close\n2021-01-04,17.25\n2021-01-04,18.0\n")
        with pytest.raises(InputFormatError, match="2021-01-04"):
            read_prices(path)

    def test_nonpositive_close_rejected(self, tmp_path):
        path = tmp_path / "prices.csv"
        path.write_text("date,close\n2021-01-04,0\n")
        with pytest.raises(InputFormatError, match="positive"):
            read_prices(path)

    def test_trends_range_checked(self, tmp_path):
        path = tmp_path / "trends.csv"
        path.write_text("date,interest\n2021-01-04,101\n")
        with pytest.raises(InputFormatError, match="0..100"):
            read_trends(path)

    def test_wrong_header_rejected(self, tmp_path):
        path = tmp_path / "prices.csv"
        path.write_text("date,value\n2021-01-04,10\n")
        with pytest.raises(InputFormatError, match="header"):
            read_prices(path)

    def test_unsorted_input_is_sorted(self, tmp_path):
        path = tmp_path / "trends.csv"
        path.write_text("date,interest\n2021-01-06,30\n2021-01-04,10\n")
        series = read_trends(path)
        assert series.values == (10.0, 30.0)


class TestReadLabels:
    def test_valid_file(self, tmp_path):
        path = tmp_path / "labels.csv"
        path.write_text("post_id,label\np1,positive\np2,negative\n")
        records = read_labels(path)
        assert records == [
            LabelRecord("p1", SentimentLabel.POSITIVE),
            LabelRecord("p2", SentimentLabel.NEGATIVE),
        ]

    def test_case_insensitive_labels(self, tmp_path):
        path = tmp_path / "labels.csv"
        path.write_text("post_id,label\np1,POSITIVE\n")
        assert read_labels(path)[0].label is SentimentLabel.POSITIVE

    def test_unknown_label_rejected(self, tmp_path):
        path = tmp_path / "labels.csv"
        path.write_text("post_id,label\np1,meh\n")
        with pytest.raises(InputFormatError, match="unknown sentiment label"):
            read_labels(path)

    def test_duplicate_post_id_rejected(self, tmp_path):
        path = tmp_path / "labels.csv"
        path.write_text("post_id,label\np1,positive\np1,negative\n")
        with pytest.raises(InputFormatError, match="duplicate"):
            read_labels(path)


class TestCommentVolume:
    def test_empty(self):
        assert len(comment_volume([])) == 0

    def test_counts_per_day(self):
        posts = [
            Post("a", 0, ""),
            Post("b", 10, ""),
            Post("c", 20, ""),
            Post("d", 2 * 86400, ""),
        ]
        series = comment_volume(posts)
        assert series.values == (3.0, 1.0)

    def test_conservation_and_permutation_invariance(self):
        posts = [Post(f"p{i}", i * 40_000, "") for i in range(25)]
        series = comment_volume(posts)
        assert sum(series.values) == 25
        assert comment_volume(list(reversed(posts))) == series


class TestFilterWindow:
    def test_inclusive_bounds(self):
        posts = [Post(f"p{i}", i * 86400, "") for i in range(5)]
        kept = filter_window(posts, posts[1].day, posts[3].day)
        assert [p.id for p in kept] == ["p1", "p2", "p3"]

    def test_open_bounds(self):
        posts = [Post("a", 0, ""), Post("b", 86400 * 10, "")]
        assert filter_window(posts, None, None) == posts


class TestRoundTrips:
    def test_posts_round_trip(self, tmp_path):
        posts = (
            Post("a", 100, "body with \U0001F680 and\nnewline"),
            Post("b", 200, "plain"),
        )
        path = tmp_path / "posts.jsonl"
        write_posts(path, posts)
        first = path.read_bytes()
        result = read_posts(path)
        assert result.posts == posts
        write_posts(path, result.posts)
        assert path.read_bytes() == first

    def test_prices_round_trip(self, tmp_path):
        series = DailySeries((day(0), day(1)), (17.25, 19.0))
        path = tmp_path / "prices.csv"
        write_prices(path, series)
        first = path.read_bytes()
        loaded = read_prices(path)
        assert loaded == series
        write_prices(path, loaded)
        assert path.read_bytes() == first

    def test_trends_round_trip(self, tmp_path):
        series = mk_series([10, 55, 100])
        path = tmp_path / "trends.csv"
        write_trends(path, series)
        loaded = read_trends(path)
        assert loaded == series
        write_trends(path, loaded)
        assert path.read_text() == f"date,interest\n{day(0)},10\n{day(1)},55\n{day(2)},100\n"

    def test_labels_round_trip(self, tmp_path):
        records = [
            LabelRecord("p1", SentimentLabel.POSITIVE),
            LabelRecord("p2", SentimentLabel.NEUTRAL),
        ]
        path = tmp_path / "labels.csv"
        write_labels(path, records)
        first = path.read_bytes()
        loaded = read_labels(path)
        assert loaded == records
        write_labels(path, loaded)
        assert path.read_bytes() == first
