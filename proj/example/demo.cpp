// Reduces a few non-admissible values and checks each result numerically.

#include <iostream>

#include "emzv/emzv.hpp"

int main() {
    using namespace emzv;
    Evaluator ev(Tau(0.0, 1.0));

    for (const Index& k : {Index{2, 1}, Index{1, 2, 2}, Index{1, 0, 3}, Index{0, 1, 1}}) {
        ReductionResult r = reduce(k);
        Complex direct = ev.value(k).value;
        Complex reduced = ev.eval_expression(r.expression).value;
        std::cout << "I(" << k << ") = " << r.expression << "\n"
                  << "  " << r.trace.steps.size() << " steps, |direct - reduced| = " << std::abs(direct - reduced)
                  << "\n";
    }

    // The length-2 Fay relation for I(2,3) in terms of other length-2 values.
    Identity fay = fay_identity(Index{2, 3});
    std::cout << to_string(fay.lhs) << " = " << to_string(fay.rhs) << "\n";
}
