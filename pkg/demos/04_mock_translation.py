"""
Running the agent workflows offline
===================================

Route a few segments and push them through the staged prompts with the
deterministic mock backend.
"""
import json

from samas import MockBackend, RunConfig, TextSegment, translate_corpus
from samas.errors import SamasError
from samas.synth import corpus_records, generate_corpus

records = corpus_records(generate_corpus(2, seed=1, length=64), target_lang="fr")
segments = [TextSegment.from_dict(r) for r in records]

# one segment with nothing to measure; it fails alone
segments.append(TextSegment("dashes", "-- -- !!", "en", "fr"))

backend = MockBackend()
results = translate_corpus(segments, RunConfig().override(concurrency=2), backend)

for seg, res in zip(segments, results):
    if isinstance(res, SamasError):
        print(seg.id, "error:", type(res).__name__)
        continue
    print(seg.id, res.style_class.value, [s.role.value for s in res.stages])

# each stage wraps the previous draft, so the final text shows the chain
print(results[0].final_translation[:80])

print(len(backend.calls), "backend calls, at most", backend.max_in_flight, "at once")

# a trace is plain JSON
print(json.dumps(results[2].to_json())[:200])
