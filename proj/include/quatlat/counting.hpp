#pragma once

#include <string>
#include <vector>

#include "quatlat/class_numbers.hpp"
#include "quatlat/numeric.hpp"

namespace quatlat {

struct TraceEntry {
    std::string fact;
    std::string source;  // which operation produced it
};

// o(nbar) for one case, with the genus records and the derivation trace.
struct CountResult {
    std::string case_id;
    std::vector<int> nbar;  // {n} or {n1, n2}
    int p = 0;
    Int o_value;
    std::vector<GenusRecord> genera;
    std::vector<int> block_counts;  // census per-Delta orbit counts, when applicable
    std::vector<TraceEntry> trace;
};

// the isotypic cases n in {3,4,5,8,12} with p | n
CountResult o_isotypic(int n, int p, int precision = 4);

// the non-isotypic cases of the six-pair table
CountResult o_pair(int n1, int n2, int p, int precision = 4);

// canonical column for a case, applying the symmetry identities
// o(6)=o(3), o(10)=o(5), o(1,3)=o(2,6), o(1,4)=o(2,4), o(1,6)=o(2,3),
// o(4,6)=o(3,4)
std::vector<int> canonical_case(std::vector<int> nbar);

// is (nbar, p) among the pairs computed here (ramified or index-divisible)?
bool in_computed_scope(const std::vector<int>& nbar, int p);

// prior-work values for everything else, keyed to the published table
struct FixtureEntry {
    Int value;
    std::string provenance;
};
FixtureEntry fixture_value(const std::vector<int>& nbar, int p);

// dispatch: computed cases recomputed, the rest served from fixtures
struct CaseValue {
    std::vector<int> nbar;
    Int value;
    std::string provenance;               // "computed" or "fixture:concluding-table"
    std::vector<CountResult> details;     // present when computed
};
CaseValue case_value(const std::vector<int>& nbar, int p, int precision = 4);

// the 11 columns of the census table with their multiplicities in the total
struct CensusColumn {
    std::vector<int> nbar;
    int coefficient;
};
const std::vector<CensusColumn>& census_columns();

struct TotalsRow {
    int p = 0;
    std::vector<CaseValue> columns;
    Int total;  // 2 + sum coeff * value
};
TotalsRow ssp2_total(int p, int precision = 4);

} // namespace quatlat
