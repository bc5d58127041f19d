#pragma once

#include <map>
#include <string>

#include "relex/alias.hpp"
#include "relex/candidates.hpp"
#include "relex/corpus.hpp"
#include "relex/seqrep.hpp"

namespace relex {

/// Sparse feature map, ordered by name so serializations are canonical.
using FeatureVector = std::map<std::string, double>;

/// Hand-engineered features of a candidate and its sequence representation:
///   TupleSpan             minimal span of the candidate
///   SentDiff_i_j          fewest sentence breaks between some E_i and some E_j
///   SameLine_i_j          1 when SentDiff_i_j is 0, else 0
///   E<i>E<j>OE_<T>        OE_T occurs between some E_i and E_j (T the type of E_i or E_j)
///   E<i>E<j>NoOE_<T>      no OE_T occurs between any E_i and E_j
///   W=<word>, C=<cluster> one indicator per word and cluster id in the sequence
FeatureVector extract_features(const Candidate& candidate, const Document& doc, const SequenceRepresentation& seq,
                               const AliasPartition& aliases, const RelationSignature& signature);

}  // namespace relex
