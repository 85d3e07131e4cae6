# %% [markdown]
# # Learning spelling variants from a corpus
#
# Frequent abusive words become nodes of a graph. Two words are joined when
# they share their first three graphemes and their indel similarity is at
# least 85. Maximum cliques are peeled off one at a time; each becomes a
# cluster whose most frequent member is the canonical spelling.

# %%
from cliquespell.cluster import train_model
from cliquespell.correct import Corrector
from cliquespell.wordgraph import WordStats, build_graph, similarity

freq = {"bewakoof": 50, "bewakoofi": 20, "bewakouf": 15}
for a, b in [("bewakoof", "bewakoofi"), ("bewakoof", "bewakouf"), ("bewakoofi", "bewakouf")]:
    print(f"{a:10s} {b:10s} {similarity(a, b):6.2f}")

# %% [markdown]
# The last pair falls below 85, so the three spellings form a path rather
# than a triangle and training produces two clusters.

# %%
stats = {w: WordStats(w, f, f, len(w), 6) for w, f in freq.items()}
print(build_graph(stats).dumps())
model = train_model(stats)
for c in model.clusters:
    print(c.parent, c.members, c.anchor_words)

# %% [markdown]
# At inference time a word is compared against the anchors of every cluster
# with the same prefix. Unseen spellings still land on a parent.

# %%
corrector = Corrector(model)
for w in ["bewakoofi", "bewakooff", "bewakoufi", "kamina"]:
    o = corrector.correct_word(w)
    print(f"{w:10s} -> {o.corrected:10s} score={o.score:.1f}")

# %% [markdown]
# On a synthetic corpus with ten planted word families the clusters come
# back intact.

# %%
from cliquespell.normalize import clean
from cliquespell.synthetic import SyntheticSpec, generate
from cliquespell.wordgraph import count_stats

synth = generate(SyntheticSpec(n_comments=3000, seed=0))
model = train_model(count_stats(synth.corpus.map_text(clean)))
for base, variants in sorted(synth.groups.items()):
    cl = next(c for c in model.clusters if base in c.members)
    print(base, "ok" if set(cl.members) == {base, *variants} else cl.members)
