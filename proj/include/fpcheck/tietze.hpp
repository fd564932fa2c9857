#pragma once

// Transformation moves on presentations. Every move here preserves the
// isomorphism type of the presented group except add_quotient_relator, whose
// output presents a quotient of its input.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fpcheck/presentation.hpp"
#include "fpcheck/word.hpp"

namespace fpcheck {

// Generator index -> finite order used for exponent reduction.
using TorsionOrders = std::map<int, int>;

// Removes `symbol` using relator `relator` (0-based), which must contain the
// generator exactly once after cyclic reduction. The generator is solved for
// and substituted into every other relator; later generators shift down.
Presentation eliminate_generator(Presentation const& p, std::string_view symbol,
                                 std::size_t relator);

// Replaces relator idx by left · r · left⁻¹.
Presentation conjugate_relator(Presentation const& p, std::size_t idx, Word const& left);

// Rewrites p over `new_symbols`. old_in_terms_of_new[i] is the image of old
// generator i+1 as a word in the new generators; new_in_terms_of_old is the
// inverse family. Both composites must reduce to the identity substitution.
Presentation change_generators(Presentation const& p, std::vector<std::string> new_symbols,
                               std::vector<Word> const& old_in_terms_of_new,
                               std::vector<Word> const& new_in_terms_of_old);

// Appends relators; the result is marked as a quotient.
Presentation add_quotient_relator(Presentation const& p, Word const& w);
Presentation add_quotient_relators(Presentation const& p, std::vector<Word> const& ws);

// Rewrites w in the free product of cyclic groups given by `orders`: every
// maximal run g^e has e reduced into [0, order), empty runs collapse and
// neighbouring runs merge. Throws if w mentions a generator without an order.
Word normalize_modulo_torsion(Word const& w, TorsionOrders const& orders);

// As above, treating w as a cyclic word: runs that meet across the ends are
// merged too.
Word normalize_cyclic_modulo_torsion(Word const& w, TorsionOrders const& orders);

// Conjugacy-and-inversion invariant of w in the free product of cyclic groups.
Word torsion_key(Word const& w, TorsionOrders const& orders);

// Orders witnessed by pure-power relators g^k of p, skipping relator `skip`.
TorsionOrders witnessed_orders(Presentation const& p,
                               std::size_t skip = static_cast<std::size_t>(-1));

// Cyclically reduces relators, drops trivial and repeated ones, then repeatedly
// eliminates generators when total relator length does not grow and shortens
// relators by multiplying in conjugates of the others.
Presentation greedy_simplify(Presentation const& p, std::size_t max_passes = 32);

}  // namespace fpcheck
