"""
From prose to sub-bands
=======================

Turn a sentence into a word-length signal and split it into frequency
bands with a wavelet packet transform.
"""
import numpy as np

from samas import get_filter, prepare_for_wpt, to_signal, tokenize, wpt_decompose, wpt_reconstruct

text = (
    "It was a long slow afternoon and the light came sideways through the dusty "
    "shutters of the parlor where the old woman sat motionless, remembering, "
    "while outside the mules stood in the heat. He left. The door closed."
)

# tokens are runs of letters and digits; punctuation disappears
tokens = tokenize(text)
print(len(tokens), tokens[:8])

# the raw signal is one character count per word
signal = to_signal(tokens, "demo")
print(signal.values)

# a depth-4 transform needs a length divisible by 16, so the tail is mirrored
padded = prepare_for_wpt(signal, 4)
print(len(signal.values), "->", len(padded.values))

x = np.asarray(padded.values, dtype=float)
db4 = get_filter("db4")
decomp = wpt_decompose(x, db4, 4)

# 16 leaves, lowest frequency first; each holds len(x) / 16 coefficients
print(decomp.as_array().shape)

# the transform is orthonormal: energy is preserved ...
energies = [float(b @ b) for b in decomp.subbands]
print(sum(energies), float(x @ x))

# ... and so is the signal itself
print(np.max(np.abs(wpt_reconstruct(decomp, db4) - x)))

# most energy sits in the first band, which carries the mean word length
print(np.round(np.array(energies) / sum(energies), 3))
