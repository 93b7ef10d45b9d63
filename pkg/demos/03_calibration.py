"""
Calibrating the routing thresholds
==================================

Generate a labelled corpus, grid-search the two thresholds and read the
ROC summary.
"""
from collections import Counter

from samas import calibrate_thresholds, classify, compute_sfs, get_filter
from samas.synth import generate_corpus

corpus = generate_corpus(100, seed=0)
print(Counter(label.value for _, label in corpus))

db4 = get_filter("db4")
samples = [(compute_sfs(sig, db4), label) for sig, label in corpus]

report = calibrate_thresholds(samples, grid_resolution=0.05)
print(report.best_thresholds)
print("accuracy", report.accuracy)
print("confusion", report.confusion)

# clearance: how far the threshold sits from the nearest sample on the
# wrong side of each feature; negative means that feature cannot separate
# the classes alone
print(report.clearance)
print({k: round(v, 3) for k, v in report.auc.items()})

# the defaults route this corpus perfectly as well
hits = sum(classify(sfs) is label for sfs, label in samples)
print(hits, "/", len(samples))
