import json
import os
import sys

import pandas as pd

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.corpus import load_corpus  # noqa: E402


def write_corpus(output_dir='corpus'):
    os.makedirs(output_dir, exist_ok=True)
    rows = []
    for curve in load_corpus():
        path = os.path.join(output_dir, f'{curve.name}.json')
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(curve.chain.to_json(), f, indent=2)
        rows.append({
            'Name': curve.name,
            'Members': len(curve.chain.active_terms),
            'Exponents': ' '.join(str(t.m) for t in curve.chain.active_terms),
            'Description': curve.description,
            'Path': path,
        })

    index = pd.DataFrame(rows)
    index_path = os.path.join(output_dir, 'index.csv')
    index.to_csv(index_path, index=False)

    print(f"Corpus of {len(rows)} curves written to {output_dir}")
    return index


if __name__ == '__main__':
    write_corpus(sys.argv[1] if len(sys.argv) > 1 else 'corpus')
