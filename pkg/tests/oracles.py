"""Independent brute-force reference implementations used only by tests.

Nothing here imports scoring or classifier code from the package; these
are the second route of every dual-route check.
"""

import math
from fractions import Fraction


def brute_force_scores(sentences, min_df=0.0):
    """Score terms of a chunk the slow, obvious way.

    ``sentences`` are pre-tokenized lists of terms. Returns
    {term: (tf, df, score)} using chunk-aggregate term frequency,
    sentence-level document frequency, and ln(1/df).
    """
    total_tokens = sum(len(s) for s in sentences)
    n_docs = len(sentences)
    terms = set()
    for s in sentences:
        terms.update(s)
    out = {}
    for term in terms:
        count = sum(1 for s in sentences for t in s if t == term)
        containing = sum(1 for s in sentences if term in s)
        df = containing / n_docs
        if df < min_df:
            continue
        tf = count / total_tokens
        score = tf * math.log(1.0 / df)
        out[term] = (tf, df, score)
    return out


def brute_force_nb_predict(train_docs, test_doc, vocab):
    """Multinomial naive Bayes with add-one smoothing in exact arithmetic.

    ``train_docs`` is a list of (tokens, label); ``test_doc`` a token
    list; ``vocab`` the feature vocabulary. Posterior products use
    Fractions, so no floating-point reordering can bias the check.
    Returns the predicted label (ties broken by sorted class order).
    """
    vocab = set(vocab)
    classes = sorted({label for _, label in train_docs})
    best_label = None
    best_posterior = None
    for c in classes:
        docs_c = [toks for toks, label in train_docs if label == c]
        prior = Fraction(len(docs_c), len(train_docs))
        total_c = sum(1 for toks in docs_c for t in toks if t in vocab)
        posterior = prior
        for t in test_doc:
            if t not in vocab:
                continue
            count = sum(1 for toks in docs_c for x in toks if x == t)
            posterior *= Fraction(count + 1, total_c + len(vocab))
        if best_posterior is None or posterior > best_posterior:
            best_posterior = posterior
            best_label = c
    return best_label
