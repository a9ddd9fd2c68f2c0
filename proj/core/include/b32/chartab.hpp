#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "b32/cyclo.hpp"
#include "b32/gfq.hpp"
#include "b32/group.hpp"
#include "b32/intmat.hpp"

namespace b32 {

enum class Provenance { Computed, Composed, Ingested };

struct TableClass {
    std::int64_t size = 0;
    long order = 0;
    int inverse_class = 0;
    std::vector<int> power_class;  // [t] = class of rep^t, t in [0, order)
    // link to the originating group's conjugacy data (computed tables only)
    int group_class = -1;
};

class CharacterTable {
public:
    std::string group_id;
    mpz_class group_order = 0;
    std::vector<TableClass> classes;
    std::vector<std::vector<Cyclo>> irr;  // characters x classes
    int identity_class = 0;
    Provenance provenance = Provenance::Computed;

    // composed tables remember their factors; class/char index pairs refer
    // to factor tables
    std::shared_ptr<const CharacterTable> factor1, factor2;
    std::vector<std::pair<int, int>> class_pair, char_pair;

    int num_classes() const { return (int)classes.size(); }
    int num_chars() const { return (int)irr.size(); }
    mpz_class degree(int chi) const { return irr[chi][identity_class].rational(); }
    int power_map(int c, std::int64_t t) const;

    std::vector<int> regular_classes_2() const;   // classes of odd element order
    std::vector<int> singular_classes_2() const;  // classes of even element order
    long exponent() const;

    Cyclo inner(int chi, int psi) const;

    // exact invariant checks; throws computation_error with a description
    // naming the offending pair on failure
    void validate() const;
};

// Dixon-Schneider over a suitable prime; exact cyclotomic output with
// deterministic class and character ordering.
CharacterTable character_table(const FiniteGroup& g, const ConjugacyData& cd,
                               const std::string& id = "", int max_classes = 120);
CharacterTable character_table(const GroupPtr& g, const std::string& id = "");

CharacterTable table_product(const std::shared_ptr<const CharacterTable>& a,
                             const std::shared_ptr<const CharacterTable>& b);

// class multiplication coefficients a_{ijk}: C_i C_j = sum_k a_{ijk} C_k,
// indices in table class order
class ClassMult {
public:
    int r = 0;
    std::vector<std::int64_t> a;
    std::int64_t at(int i, int j, int k) const { return a[((std::size_t)i * r + j) * r + k]; }
    std::int64_t& at(int i, int j, int k) { return a[((std::size_t)i * r + j) * r + k]; }
};

// combinatorial tensor from the group (table classes must come from cd)
ClassMult class_mult_from_group(const FiniteGroup& g, const ConjugacyData& cd,
                                const CharacterTable& t);
// Kronecker tensor for composed tables
ClassMult class_mult_kronecker(const ClassMult& a, const ClassMult& b, const CharacterTable& t);
// from character values alone: a_{ijk} = |Ci||Cj|/|G| sum_chi x_i x_j conj(x_k)/x(1)
ClassMult class_mult_from_table(const CharacterTable& t);

struct BlockData {
    int id = 0;
    std::vector<int> chars;  // table character indices, ascending
    int defect = 0;
    int k = 0;
    int l = 0;  // 0 until a decomposition matrix is attached
    bool principal = false;
    IntMat dmat;  // k x l, rows matching `chars`
    std::vector<mpz_class> ibr_degrees;  // simple module dimensions (columns)
    bool has_dmat = false;
    std::string dmat_provenance;
    IntMat cartan;

    bool has_char(int chi) const;
};

struct BlockPartition {
    std::vector<BlockData> blocks;
    std::vector<int> block_of_char;
    int principal_block = -1;
};

// 2-block distribution via central characters reduced mod 2
BlockPartition blocks_2(const CharacterTable& t);

// Brauer characters by inflation from G/O2(G) when O2(G) is a Sylow
// 2-subgroup; fills dmat/cartan/l of every block in bp.
void decomposition_normal_sylow(const GroupPtr& g, const ConjugacyData& cd,
                                const CharacterTable& t, BlockPartition& bp);

// solve D from  chi|_{2-regular} = D * Phi  given explicit Brauer character
// values (rows of `brauer` over the 2-regular classes of t, in that order).
// Columns whose support lies in a block get attached there.
void decomposition_from_brauer(const CharacterTable& t, const std::vector<std::vector<Cyclo>>& brauer,
                               BlockPartition& bp, const std::string& provenance);

IntMat cartan_from_decomposition(const IntMat& dmat);

// Kronecker-compose decomposition matrices of two factor blocks onto the
// matching block of a product table
void compose_block_dmat(const CharacterTable& prod, const BlockData& b1, const BlockData& b2,
                        BlockPartition& bp);

// flatten character values on the given classes into exact integer
// coordinates (basis of Z[zeta_ord] per class)
IntMat flatten_values(const CharacterTable& t, const std::vector<int>& chars,
                      const std::vector<int>& classes);
IntMat flatten_rows(const CharacterTable& t, const std::vector<std::vector<Cyclo>>& rows,
                    const std::vector<int>& classes);

// --- serialisation -------------------------------------------------------

std::string table_to_json(const CharacterTable& t, const BlockPartition* bp = nullptr);
CharacterTable table_from_json(const std::string& text);

struct DecData {
    std::string group_id;
    std::string block_id;
    std::vector<int> char_indices;       // rows, indices into the table
    std::vector<long> ibr_degrees;       // simple module dimensions
    IntMat d_matrix;
    std::string provenance_note;
};

std::string dec_to_json(const DecData& d);
DecData dec_from_json(const std::string& text);

}  // namespace b32
