#include "rrp/holder.hpp"

// Template-only module; explicit instantiations for the value kinds used
// across the library keep rebuilds cheap for downstream TUs.

namespace rrp {

template HolderReport holder_seminorm<Vec>(const GridPath<Vec>&, double, const PairBudget&);
template HolderReport holder_seminorm<LinMap>(const GridPath<LinMap>&, double, const PairBudget&);
template HolderReport holder_seminorm<BilinMap>(const GridPath<BilinMap>&, double,
                                                const PairBudget&);
template HolderReport holder_seminorm<SymTensor2>(const GridPath<SymTensor2>&, double,
                                                  const PairBudget&);

template HolderReport two_param_seminorm<Vec>(const TwoParamField<Vec>&, double,
                                              const PairBudget&);
template HolderReport two_param_seminorm<LinMap>(const TwoParamField<LinMap>&, double,
                                                 const PairBudget&);
template HolderReport two_param_seminorm<SymTensor2>(const TwoParamField<SymTensor2>&, double,
                                                     const PairBudget&);

template double sup_bound_from_holder<Vec>(const GridPath<Vec>&, double, const PairBudget&);
template double sup_bound_from_holder<LinMap>(const GridPath<LinMap>&, double, const PairBudget&);

}  // namespace rrp
