// Generated by tests/oracle/generate.py (mpmath); do not edit by hand.
#pragma once

namespace oracle {

inline constexpr double kMittagLeffler[][3] = {
    {0.3, -5, 0.13708086902027064},
    {0.3, -3, 0.21180263319643578},
    {0.3, -1, 0.45659440832969067},
    {0.3, -0.1, 0.89881153650272255},
    {0.3, 0.5, 2.0620157899559995},
    {0.3, 2, 79485.907625183569},
    {0.3, 4, 4.4100941505093523e+44},
    {0.5, -10, 0.056140992743822586},
    {0.5, -3, 0.17900115118138995},
    {0.5, -1, 0.427583576155807},
    {0.5, -0.1, 0.89645697996912664},
    {0.5, 0.5, 1.9523604891825571},
    {0.5, 2, 108.94090438997797},
    {0.5, 6, 8622463094230390.4},
    {0.7, -10, 0.036173265542309158},
    {0.7, -3, 0.13789710966502708},
    {0.7, -1, 0.39961197811559939},
    {0.7, -0.1, 0.89756112693138677},
    {0.7, 0.5, 1.8249850568512025},
    {0.7, 2, 20.966433131481956},
    {0.7, 6, 590100.4138518061},
    {0.9, -10, 0.0128206060511021},
    {0.9, -3, 0.083888354033773262},
    {0.9, -1, 0.37606602142464188},
    {0.9, -0.1, 0.9017569424498594},
    {0.9, 0.5, 1.7043087220993991},
    {0.9, 2, 9.6049277845715007},
    {0.9, 6, 1680.8616553505858}};

inline constexpr double kStableDensity[][3] = {
    {0.3, 0.1, 1.0123705088895965},
    {0.3, 0.3, 0.39571618723732725},
    {0.3, 1, 0.11715700256591615},
    {0.3, 3, 0.034603700984060561},
    {0.3, 20, 0.0036466700282731995},
    {0.7, 0.1, 0.000000000036217366071389732},
    {0.7, 0.3, 0.63311518064929995},
    {0.7, 1, 0.38739501014659244},
    {0.7, 3, 0.050000904020222369},
    {0.7, 20, 0.0015816670843142984},
    {0.9, 1, 0.90733207105914411},
    {0.9, 3, 0.023564159838575613},
    {0.9, 20, 0.00035773726528561056}};

inline constexpr double kStableCdf[][3] = {
    {0.3, 0.3, 0.28861876720905998},
    {0.3, 1, 0.43244874100630497},
    {0.3, 3, 0.55450864240803012},
    {0.3, 20, 0.72238686897257662},
    {0.7, 0.3, 0.031895838724952076},
    {0.7, 1, 0.53718723332616037},
    {0.7, 3, 0.8153299615846833},
    {0.7, 20, 0.95688913419060971}};

inline constexpr double kDistributedUniformK[][2] = {
    {1e-06, 72382.341268128324},
    {0.01, 21.497576854210965},
    {0.5, 1.4426950408889634},
    {3, 0.60682615108455826},
    {1000.0, 0.14462006247378286},
    {1000000.0, 0.072382341268128321}};

inline constexpr double kDistributedUniformPrimitive[][2] = {
    {0.01, 0.22979490563759744},
    {1, 1.0851426643574701},
    {10, 4.2044117384314283}};

inline constexpr double kTwoPowerK[][4] = {
    {0.4, 0.5, 0.0001, 830.34780799493542},
    {0.4, 0.5, 0.1, 13.646244302486059},
    {0.4, 0.5, 1, 3.6790939804058807},
    {0.4, 0.5, 10, 1.0587087402335676},
    {0.4, 0.5, 10000.0, 0.031489196204395975},
    {0.3, 0.5, 0.0001, 2451.3997928337253},
    {0.3, 0.5, 0.1, 20.398217912978822},
    {0.3, 0.5, 1, 4.5544430879621722},
    {0.3, 0.5, 10, 1.158767767264518},
    {0.3, 0.5, 10000.0, 0.0315974795594954},
    {0.6, 0.5, 0.0001, 130.81305292517998},
    {0.6, 0.5, 0.1, 7.6652435328045863},
    {0.6, 0.5, 1, 2.7745019184840558},
    {0.6, 0.5, 10, 0.94611812679171178},
    {0.6, 0.5, 10000.0, 0.03136074845432998}};

inline constexpr double kDistributedUniformRho[][3] = {
    {0.5, 0.1, 0.69172586736237735},
    {0.5, 1, 0.55892183052811908},
    {0.5, 3, 0.0000014918768227981338},
    {2, 0.1, 0.42359029298685725},
    {2, 1, 0.33349771519608975},
    {2, 3, 0.13709209158010277}};

inline constexpr double kLogistic[][4] = {
    {0.5, 0.1, 1, 0.14593756637028917},
    {0.5, 0.1, 5, 0.37640965571458447},
    {0.5, 0.1, 10, 0.48687777346932382},
    {0.3, 0.9, 1, 0.78682830509244727},
    {0.3, 0.9, 5, 0.70472910555764256},
    {0.3, 0.9, 10, 0.70014187705578143}};

inline constexpr double kLaplaceGrid[][4] = {
    {0.5, 0.5, 0.5, 0.69923766944079614},
    {0.5, 0.5, 1, 0.61569034419292587},
    {0.5, 0.5, 2, 0.52315658373024674},
    {0.5, 1, 0.5, 0.52315658373024674},
    {0.5, 1, 1, 0.427583576155807},
    {0.5, 1, 2, 0.33620400244634121},
    {0.5, 2, 0.5, 0.33620400244634121},
    {0.5, 2, 1, 0.25539567631050574},
    {0.5, 2, 2, 0.18882128260393787},
    {0.7, 0.5, 0.5, 0.72596076183941277},
    {0.7, 0.5, 1, 0.60514759205956427},
    {0.7, 0.5, 2, 0.46265164316058421},
    {0.7, 1, 0.5, 0.54582672905990236},
    {0.7, 1, 1, 0.39961197811559939},
    {0.7, 1, 2, 0.26319000679909246},
    {0.7, 2, 0.5, 0.33838531062055965},
    {0.7, 2, 1, 0.21378672701529728},
    {0.7, 2, 2, 0.12612043922481574}};

}  // namespace oracle
