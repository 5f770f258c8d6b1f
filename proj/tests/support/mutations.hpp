#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace treeitp::testing {

// A single textual edit of tests/data/example1.proof.
struct Mutation {
    std::string name;
    std::string find;  // occurs exactly once in the proof text
    std::string replace;
};

inline const std::vector<Mutation>& example1_mutations() {
    static const std::vector<Mutation> m{
        // Flipped literals.
        {"flip-inst1-instance", "x))) (<= (g (h b)) b)))", "x))) (not (<= (g (h b)) b))))"},
        {"flip-r0-clause", "  (<= (g (h b)) b))\n", "  (not (<= (g (h b)) b)))\n"},
        {"flip-tricho-equality", "(or (= (g (h b)) b) (not (<= (g (h b)) b))",
         "(or (not (= (g (h b)) b)) (not (<= (g (h b)) b))"},
        {"flip-r1-clause", "  (or (= (g (h b)) b) (not (>= (g (h b)) b))))\n",
         "  (or (= (g (h b)) b) (>= (g (h b)) b)))\n"},
        {"flip-inst2-instance", "(>= (g y) b))) (>= (g (h b)) b)))",
         "(>= (g y) b))) (not (>= (g (h b)) b))))"},
        {"flip-r2-clause", "  (>= (g (h b)) b))\n(res r3", "  (not (>= (g (h b)) b)))\n(res r3"},
        {"flip-r3-clause", "  (= (g (h b)) b))\n", "  (not (= (g (h b)) b)))\n"},
        {"flip-r4-clause", "  (not (= (f (g (h b))) (f b))))\n\n",
         "  (= (f (g (h b))) (f b)))\n\n"},
        {"flip-cong-premise", "(or (not (= (g (h b)) b)) (= (f (g (h b))) (f b))))",
         "(or (= (g (h b)) b) (= (f (g (h b))) (f b))))"},
        {"flip-r5-clause", "  (not (= (g (h b)) b)))\n", "  (= (g (h b)) b))\n"},
        // Altered coefficients.
        {"scale-inst1-instance", "(<= (g (h b)) b)))\n(res r0", "(<= (* 2 (g (h b))) b)))\n(res r0"},
        {"scale-tricho-literal", "(not (>= (g (h b)) b))))\n(res r1",
         "(not (>= (* 2 (g (h b))) b))))\n(res r1"},
        {"scale-phi1-input", "(input phi1 :partition 1 (forall ((x Real)) (<= (g (h x)) x)))",
         "(input phi1 :partition 1 (forall ((x Real)) (<= (g (h x)) (* 2 x))))"},
        {"scale-inst2-instance", "(>= (g (h b)) b)))\n(res r2", "(>= (g (h b)) (* 2 b))))\n(res r2"},
        {"scale-r3-clause", "  (= (g (h b)) b))\n", "  (= (g (h b)) (* 2 b)))\n"},
        {"shift-tricho-terms", ":tricho (g (h b)) b\n", ":tricho (g (h b)) (+ b 1)\n"},
        // Swapped resolution edges.
        {"swap-r0", ":pos phi1 :neg inst1", ":pos inst1 :neg phi1"},
        {"swap-r3", ":pos r2 :neg r1", ":pos r1 :neg r2"},
        {"swap-r5", ":pos cong :neg r4", ":pos r4 :neg cong"},
        {"swap-bot", ":pos r3 :neg r5", ":pos r5 :neg r3"},
    };
    return m;
}

inline std::string apply(const Mutation& m, const std::string& text) {
    std::size_t at = text.find(m.find);
    if (at == std::string::npos || text.find(m.find, at + 1) != std::string::npos)
        throw std::runtime_error("mutation " + m.name + " does not match exactly once");
    std::string out = text;
    out.replace(at, m.find.size(), m.replace);
    return out;
}

}  // namespace treeitp::testing
