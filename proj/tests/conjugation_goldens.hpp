#ifndef TESTS_CONJUGATION_GOLDENS_HPP
#define TESTS_CONJUGATION_GOLDENS_HPP

#include <string>
#include <vector>

namespace testutil {

struct ConjugationGolden {
    std::string stem;
    std::string cls;
    std::string ending;
    std::string expected;
};

// Expected joins under the sample pack's rule table (data/pack/rules.conj).
inline const std::vector<ConjugationGolden>& conjugation_goldens() {
    static const std::vector<ConjugationGolden> cases = {
        {"하", "C_HA", "어", "해"},
        {"하", "C_HA", "었다", "했다"},
        {"하", "C_HA", "었어", "했어"},
        {"하", "C_HA", "아서", "해서"},
        {"하", "C_HA", "고", "하고"},
        {"하", "C_HA", "는지", "하는지"},
        {"개설하", "C_HA", "어 줘", "개설해 줘"},
        {"찾", "C_AO", "어", "찾아"},
        {"찾", "C_AO", "었다", "찾았다"},
        {"받", "C_AO", "어 줘", "받아 줘"},
        {"팔", "C_AO", "는", "파는"},
        {"팔", "C_AO", "는지", "파는지"},
        {"깔", "C_AO", "어", "깔아"},
        {"알", "C_AO", "는", "아는"},
        {"사", "C_A", "어", "사"},
        {"사", "C_A", "었다", "샀다"},
        {"가", "C_A", "어", "가"},
        {"내", "C_AE", "어", "내"},
        {"보내", "C_AE", "어 줘", "보내 줘"},
        {"보", "C_O", "어", "봐"},
        {"보", "C_O", "었다", "봤다"},
        {"주", "C_U", "어", "줘"},
        {"주", "C_U", "었어요", "줬어요"},
        {"마시", "C_I", "어", "마셔"},
        {"마시", "C_I", "었다", "마셨다"},
        {"쓰", "C_EU", "어", "써"},
        {"끄", "C_EU", "어 줘", "꺼 줘"},
        {"덥", "C_B", "어", "더워"},
        {"돕", "C_B", "었다", "도왔다"},
        {"듣", "C_D", "어", "들어"},
        {"걷", "C_D", "었다", "걸었다"},
        {"모르", "C_LEU", "어", "몰라"},
        {"부르", "C_LEU", "었어", "불렀어"},
        {"만들", "C_L", "시지요", "만드시지요"},
        {"만들", "C_L", "는지", "만드는지"},
        {"만들", "C_L", "어", "만들어"},
        {"넣", "REG", "어", "넣어"},
    };
    return cases;
}

} // namespace testutil

#endif
