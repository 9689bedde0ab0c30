#!/usr/bin/env python3
"""Fetch the public benchmark datasets used by the acceptance suite.

Downloads the Pima Indians Diabetes and Glass Identification datasets (UCI)
and writes normalized CSVs into data/. Each file is verified against its
published row and class counts before it is written; a failed check aborts
without writing.

Usage:
    python3 scripts/fetch_datasets.py [--out data]

Network access to the mirror URLs below is required.
"""

import argparse
import csv
import io
import sys
import urllib.request
from collections import Counter

PIMA_URLS = [
    "https://raw.githubusercontent.com/jbrownlee/Datasets/master/pima-indians-diabetes.data.csv",
    "https://raw.githubusercontent.com/plotly/datasets/master/diabetes.csv",
]
PIMA_HEADER = [
    "Pregnancies", "Glucose", "BloodPressure", "SkinThickness", "Insulin",
    "BMI", "DiabetesPedigreeFunction", "Age", "Outcome",
]

GLASS_URLS = [
    "https://archive.ics.uci.edu/ml/machine-learning-databases/glass/glass.data",
    "https://raw.githubusercontent.com/jbrownlee/Datasets/master/glass.csv",
]
GLASS_HEADER = ["RI", "Na", "Mg", "Al", "Si", "K", "Ca", "Ba", "Fe", "Type"]

YEAST_URLS = [
    "https://archive.ics.uci.edu/ml/machine-learning-databases/yeast/yeast.data",
]
YEAST_HEADER = ["mcg", "gvh", "alm", "mit", "erl", "pox", "vac", "nuc", "class"]


def fetch(urls):
    last_error = None
    for url in urls:
        try:
            print(f"  fetching {url}")
            with urllib.request.urlopen(url, timeout=30) as response:
                return response.read().decode("utf-8"), url
        except Exception as exc:  # noqa: BLE001 - report and try the next mirror
            print(f"    failed: {exc}")
            last_error = exc
    raise RuntimeError(f"all mirrors failed; last error: {last_error}")


def parse_rows(text, separator=","):
    if separator is None:
        return [line.split() for line in text.splitlines() if line.strip()]
    return [row for row in csv.reader(io.StringIO(text)) if row]


def looks_like_header(row):
    for cell in row:
        try:
            float(cell)
            return False
        except ValueError:
            continue
    return True


def write_csv(path, header, rows):
    with open(path, "w", newline="") as out:
        writer = csv.writer(out)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"  wrote {path} ({len(rows)} rows)")


def fetch_pima(out_dir):
    print("pima-indians-diabetes:")
    text, _ = fetch(PIMA_URLS)
    rows = parse_rows(text)
    if looks_like_header(rows[0]):
        rows = rows[1:]
    if len(rows) != 768:
        raise RuntimeError(f"pima: expected 768 rows, got {len(rows)}")
    labels = Counter(row[-1] for row in rows)
    if labels.get("1") != 268 or labels.get("0") != 500:
        raise RuntimeError(f"pima: expected 268/500 class split, got {dict(labels)}")
    write_csv(f"{out_dir}/pima.csv", PIMA_HEADER, rows)


def fetch_glass(out_dir):
    print("glass:")
    text, _ = fetch(GLASS_URLS)
    rows = parse_rows(text)
    if looks_like_header(rows[0]):
        rows = rows[1:]
    # the UCI file carries a leading Id column (1..214); drop it when present
    if len(rows[0]) == 11 and [row[0] for row in rows[:3]] == ["1", "2", "3"]:
        rows = [row[1:] for row in rows]
    if len(rows) != 214 or len(rows[0]) != 10:
        raise RuntimeError(f"glass: expected 214 rows x 10 columns, got {len(rows)} x {len(rows[0])}")
    labels = Counter(row[-1] for row in rows)
    if labels.get("3") != 17:
        raise RuntimeError(f"glass: expected 17 instances of class '3', got {dict(labels)}")
    write_csv(f"{out_dir}/glass.csv", GLASS_HEADER, rows)


def fetch_yeast(out_dir):
    print("yeast (optional):")
    try:
        text, _ = fetch(YEAST_URLS)
    except RuntimeError as exc:
        print(f"  skipped: {exc}")
        return
    rows = [row[1:] for row in parse_rows(text, separator=None)]  # drop the sequence name
    if len(rows) != 1484:
        print(f"  skipped: expected 1484 rows, got {len(rows)}")
        return
    write_csv(f"{out_dir}/yeast.csv", YEAST_HEADER, rows)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data", help="output directory (default: data)")
    args = parser.parse_args()

    import os
    os.makedirs(args.out, exist_ok=True)
    try:
        fetch_pima(args.out)
        fetch_glass(args.out)
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fetch_yeast(args.out)
    print("done")
    return 0


if __name__ == "__main__":
    sys.exit(main())
