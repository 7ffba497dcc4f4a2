#include "wtm/wavelet.hpp"

// Filter tap tables for the supported families. Values are the standard
// published Daubechies and Cohen-Daubechies-Feauveau spline coefficients,
// aligned (leading zeros) so that the periodized analysis/synthesis pair in
// wavelet.cpp reconstructs with zero circular delay. The round-trip property
// tests guard every entry.

namespace wtm {

const std::vector<WaveletSpec>& wavelet_catalog() {
    static const std::vector<WaveletSpec> catalog = {
        {"haar",
         {0.70710678118654752, 0.70710678118654752},
         {0.70710678118654752, -0.70710678118654752},
         {0.70710678118654752, 0.70710678118654752},
         {0.70710678118654752, -0.70710678118654752}},
        {"db2",
         {-0.12940952255126038, 0.22414386804201338, 0.83651630373780791, 0.48296291314453414},
         {0.48296291314453414, -0.83651630373780791, 0.22414386804201338, 0.12940952255126038},
         {-0.12940952255126038, 0.22414386804201338, 0.83651630373780791, 0.48296291314453414},
         {0.48296291314453414, -0.83651630373780791, 0.22414386804201338, 0.12940952255126038}},
        {"db3",
         {0.035226291885709537, -0.085441273882026662, -0.13501102001025459, 0.45987750211849157,
          0.80689150931109258, 0.33267055295008262},
         {0.33267055295008262, -0.80689150931109258, 0.45987750211849157, 0.13501102001025459,
          -0.085441273882026662, -0.035226291885709537},
         {0.035226291885709537, -0.085441273882026662, -0.13501102001025459, 0.45987750211849157,
          0.80689150931109258, 0.33267055295008262},
         {0.33267055295008262, -0.80689150931109258, 0.45987750211849157, 0.13501102001025459,
          -0.085441273882026662, -0.035226291885709537}},
        {"db4",
         {-0.010597401785069032, 0.032883011666885200, 0.030841381835560764, -0.18703481171909308,
          -0.027983769416859854, 0.63088076792985891, 0.71484657055291565, 0.23037781330889650},
         {0.23037781330889650, -0.71484657055291565, 0.63088076792985891, 0.027983769416859854,
          -0.18703481171909308, -0.030841381835560764, 0.032883011666885200, 0.010597401785069032},
         {-0.010597401785069032, 0.032883011666885200, 0.030841381835560764, -0.18703481171909308,
          -0.027983769416859854, 0.63088076792985891, 0.71484657055291565, 0.23037781330889650},
         {0.23037781330889650, -0.71484657055291565, 0.63088076792985891, 0.027983769416859854,
          -0.18703481171909308, -0.030841381835560764, 0.032883011666885200, 0.010597401785069032}},
        {"bior1.1",
         {0.70710678118654752, 0.70710678118654752},
         {-0.70710678118654752, 0.70710678118654752},
         {0.70710678118654752, 0.70710678118654752},
         {-0.70710678118654752, 0.70710678118654752}},
        {"bior1.3",
         {-0.088388347648318441, 0.088388347648318441, 0.70710678118654752, 0.70710678118654752,
          0.088388347648318441, -0.088388347648318441},
         {0.0, 0.0, -0.70710678118654752, 0.70710678118654752},
         {0.0, 0.0, 0.70710678118654752, 0.70710678118654752},
         {0.088388347648318441, 0.088388347648318441, -0.70710678118654752, 0.70710678118654752,
          -0.088388347648318441, -0.088388347648318441}},
        {"bior1.5",
         {0.016572815184059708, -0.016572815184059708, -0.12153397801643786, 0.12153397801643786,
          0.70710678118654752, 0.70710678118654752, 0.12153397801643786, -0.12153397801643786,
          -0.016572815184059708, 0.016572815184059708},
         {0.0, 0.0, 0.0, 0.0, -0.70710678118654752, 0.70710678118654752},
         {0.0, 0.0, 0.0, 0.0, 0.70710678118654752, 0.70710678118654752},
         {-0.016572815184059708, -0.016572815184059708, 0.12153397801643786, 0.12153397801643786,
          -0.70710678118654752, 0.70710678118654752, -0.12153397801643786, -0.12153397801643786,
          0.016572815184059708, 0.016572815184059708}},
        {"bior2.2",
         {-0.17677669529663688, 0.35355339059327376, 1.0606601717798213, 0.35355339059327376,
          -0.17677669529663688},
         {0.0, 0.0, -0.35355339059327376, 0.70710678118654752, -0.35355339059327376},
         {0.0, 0.35355339059327376, 0.70710678118654752, 0.35355339059327376},
         {0.0, -0.17677669529663688, -0.35355339059327376, 1.0606601717798213, -0.35355339059327376,
          -0.17677669529663688}},
        {"bior2.4",
         {0.033145630368119415, -0.066291260736238830, -0.17677669529663688, 0.41984465132951259,
          0.99436891104358246, 0.41984465132951259, -0.17677669529663688, -0.066291260736238830,
          0.033145630368119415},
         {0.0, 0.0, 0.0, 0.0, -0.35355339059327376, 0.70710678118654752, -0.35355339059327376},
         {0.0, 0.0, 0.0, 0.35355339059327376, 0.70710678118654752, 0.35355339059327376},
         {0.0, 0.033145630368119415, 0.066291260736238830, -0.17677669529663688, -0.41984465132951259,
          0.99436891104358246, -0.41984465132951259, -0.17677669529663688, 0.066291260736238830,
          0.033145630368119415}},
        {"bior2.6",
         {-0.0069053396600248782, 0.013810679320049756, 0.046956309688169172, -0.10772329869638810,
          -0.16987135563661200, 0.44746600996961211, 0.96674755240348294, 0.44746600996961211,
          -0.16987135563661200, -0.10772329869638810, 0.046956309688169172, 0.013810679320049756,
          -0.0069053396600248782},
         {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.35355339059327376, 0.70710678118654752, -0.35355339059327376},
         {0.0, 0.0, 0.0, 0.0, 0.0, 0.35355339059327376, 0.70710678118654752, 0.35355339059327376},
         {0.0, -0.0069053396600248782, -0.013810679320049756, 0.046956309688169172, 0.10772329869638810,
          -0.16987135563661200, -0.44746600996961211, 0.96674755240348294, -0.44746600996961211,
          -0.16987135563661200, 0.10772329869638810, 0.046956309688169172, -0.013810679320049756,
          -0.0069053396600248782}},
        {"bior2.8",
         {0.0015105430506304421, -0.0030210861012608842, -0.012947511862546647, 0.028916109826354177,
          0.052998481890690940, -0.13491307360773606, -0.16382918343409023, 0.46257144047591653,
          0.95164212189717852, 0.46257144047591653, -0.16382918343409023, -0.13491307360773606,
          0.052998481890690940, 0.028916109826354177, -0.012947511862546647, -0.0030210861012608842,
          0.0015105430506304421},
         {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.35355339059327376, 0.70710678118654752,
          -0.35355339059327376},
         {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.35355339059327376, 0.70710678118654752,
          0.35355339059327376},
         {0.0, 0.0015105430506304421, 0.0030210861012608842, -0.012947511862546647, -0.028916109826354177,
          0.052998481890690940, 0.13491307360773606, -0.16382918343409023, -0.46257144047591653,
          0.95164212189717852, -0.46257144047591653, -0.16382918343409023, 0.13491307360773606,
          0.052998481890690940, -0.028916109826354177, -0.012947511862546647, 0.0030210861012608842,
          0.0015105430506304421}},
        {"bior3.1",
         {-0.35355339059327376, 1.0606601717798213, 1.0606601717798213, -0.35355339059327376},
         {-0.17677669529663688, 0.53033008588991064, -0.53033008588991064, 0.17677669529663688},
         {0.17677669529663688, 0.53033008588991064, 0.53033008588991064, 0.17677669529663688},
         {0.35355339059327376, 1.0606601717798213, -1.0606601717798213, -0.35355339059327376}},
        {"rbio1.1",
         {0.70710678118654752, 0.70710678118654752},
         {-0.70710678118654752, 0.70710678118654752},
         {0.70710678118654752, 0.70710678118654752},
         {-0.70710678118654752, 0.70710678118654752}},
        {"rbio1.3",
         {0.0, 0.0, 0.70710678118654752, 0.70710678118654752},
         {0.088388347648318441, 0.088388347648318441, -0.70710678118654752, 0.70710678118654752,
          -0.088388347648318441, -0.088388347648318441},
         {-0.088388347648318441, 0.088388347648318441, 0.70710678118654752, 0.70710678118654752,
          0.088388347648318441, -0.088388347648318441},
         {0.0, 0.0, -0.70710678118654752, 0.70710678118654752}},
        {"rbio1.5",
         {0.0, 0.0, 0.0, 0.0, 0.70710678118654752, 0.70710678118654752},
         {-0.016572815184059708, -0.016572815184059708, 0.12153397801643786, 0.12153397801643786,
          -0.70710678118654752, 0.70710678118654752, -0.12153397801643786, -0.12153397801643786,
          0.016572815184059708, 0.016572815184059708},
         {0.016572815184059708, -0.016572815184059708, -0.12153397801643786, 0.12153397801643786,
          0.70710678118654752, 0.70710678118654752, 0.12153397801643786, -0.12153397801643786,
          -0.016572815184059708, 0.016572815184059708},
         {0.0, 0.0, 0.0, 0.0, -0.70710678118654752, 0.70710678118654752}},
        {"rbio2.2",
         {0.0, 0.35355339059327376, 0.70710678118654752, 0.35355339059327376},
         {0.0, -0.17677669529663688, -0.35355339059327376, 1.0606601717798213, -0.35355339059327376,
          -0.17677669529663688},
         {-0.17677669529663688, 0.35355339059327376, 1.0606601717798213, 0.35355339059327376,
          -0.17677669529663688},
         {0.0, 0.0, -0.35355339059327376, 0.70710678118654752, -0.35355339059327376}},
        {"rbio2.4",
         {0.0, 0.0, 0.0, 0.35355339059327376, 0.70710678118654752, 0.35355339059327376},
         {0.0, 0.033145630368119415, 0.066291260736238830, -0.17677669529663688, -0.41984465132951259,
          0.99436891104358246, -0.41984465132951259, -0.17677669529663688, 0.066291260736238830,
          0.033145630368119415},
         {0.033145630368119415, -0.066291260736238830, -0.17677669529663688, 0.41984465132951259,
          0.99436891104358246, 0.41984465132951259, -0.17677669529663688, -0.066291260736238830,
          0.033145630368119415},
         {0.0, 0.0, 0.0, 0.0, -0.35355339059327376, 0.70710678118654752, -0.35355339059327376}},
        {"rbio2.6",
         {0.0, 0.0, 0.0, 0.0, 0.0, 0.35355339059327376, 0.70710678118654752, 0.35355339059327376},
         {0.0, -0.0069053396600248782, -0.013810679320049756, 0.046956309688169172, 0.10772329869638810,
          -0.16987135563661200, -0.44746600996961211, 0.96674755240348294, -0.44746600996961211,
          -0.16987135563661200, 0.10772329869638810, 0.046956309688169172, -0.013810679320049756,
          -0.0069053396600248782},
         {-0.0069053396600248782, 0.013810679320049756, 0.046956309688169172, -0.10772329869638810,
          -0.16987135563661200, 0.44746600996961211, 0.96674755240348294, 0.44746600996961211,
          -0.16987135563661200, -0.10772329869638810, 0.046956309688169172, 0.013810679320049756,
          -0.0069053396600248782},
         {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.35355339059327376, 0.70710678118654752, -0.35355339059327376}},
        {"rbio2.8",
         {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.35355339059327376, 0.70710678118654752,
          0.35355339059327376},
         {0.0, 0.0015105430506304421, 0.0030210861012608842, -0.012947511862546647, -0.028916109826354177,
          0.052998481890690940, 0.13491307360773606, -0.16382918343409023, -0.46257144047591653,
          0.95164212189717852, -0.46257144047591653, -0.16382918343409023, 0.13491307360773606,
          0.052998481890690940, -0.028916109826354177, -0.012947511862546647, 0.0030210861012608842,
          0.0015105430506304421},
         {0.0015105430506304421, -0.0030210861012608842, -0.012947511862546647, 0.028916109826354177,
          0.052998481890690940, -0.13491307360773606, -0.16382918343409023, 0.46257144047591653,
          0.95164212189717852, 0.46257144047591653, -0.16382918343409023, -0.13491307360773606,
          0.052998481890690940, 0.028916109826354177, -0.012947511862546647, -0.0030210861012608842,
          0.0015105430506304421},
         {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.35355339059327376, 0.70710678118654752,
          -0.35355339059327376}},
        {"rbio3.1",
         {0.17677669529663688, 0.53033008588991064, 0.53033008588991064, 0.17677669529663688},
         {0.35355339059327376, 1.0606601717798213, -1.0606601717798213, -0.35355339059327376},
         {-0.35355339059327376, 1.0606601717798213, 1.0606601717798213, -0.35355339059327376},
         {-0.17677669529663688, 0.53033008588991064, -0.53033008588991064, 0.17677669529663688}},
    };
    return catalog;
}

}  // namespace wtm
