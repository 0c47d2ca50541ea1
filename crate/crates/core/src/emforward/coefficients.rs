// Guptasarma & Singh (1997) digital linear filters for Hankel transforms.
// Abscissae are 10^(A + i*S) for i = 0..N, weights follow.
pub(crate) const J0_120_LOG10_START: f64 = -8.3885;
pub(crate) const J0_120_LOG10_STEP: f64 = 0.090422646867;
#[rustfmt::skip]
pub(crate) const J0_120_WEIGHTS: [f64; 120] = [
    9.62801364263e-07, -5.02069203805e-06, 1.25268783953e-05,
    -1.99324417376e-05, 2.29149033546e-05, -2.04737583809e-05,
    1.49952002937e-05, -9.3750284098e-06, 5.20156955323e-06,
    -2.62939890538e-06, 1.26550848081e-06, -5.73156151923e-07,
    2.76281274155e-07, -1.09963734387e-07, 7.3803833028e-08,
    -9.31614600001e-09, 3.87247135578e-08, 2.10303178461e-08,
    4.10556513877e-08, 4.13077946246e-08, 5.68828741789e-08,
    6.5954363813e-08, 8.40811858728e-08, 1.01532550003e-07,
    1.26437360082e-07, 1.54733678097e-07, 1.91218582499e-07,
    2.35008851918e-07, 2.8975032949e-07, 3.56550504341e-07,
    4.39299297826e-07, 5.4079454488e-07, 6.66136379541e-07,
    8.20175040653e-07, 1.01015545059e-06, 1.24384500153e-06,
    1.53187399787e-06, 1.88633707689e-06, 2.32307100992e-06,
    2.86067883258e-06, 3.5229320858e-06, 4.33827546442e-06,
    5.34253613351e-06, 6.579062232e-06, 8.10198829111e-06,
    9.97723263578e-06, 1.22867312381e-05, 1.51305855976e-05,
    1.86329431672e-05, 2.29456891669e-05, 2.82570465155e-05,
    3.47973610445e-05, 4.28521099371e-05, 5.27705217882e-05,
    6.4985694366e-05, 8.0026966218e-05, 9.85515408752e-05,
    0.000121361571831, 0.000149454562334, 0.0001840457845,
    0.000226649641428, 0.00027910674889, 0.000343716968725,
    0.000423267056591, 0.000521251001943, 0.000641886194381,
    0.000790483105615, 0.000973420647376, 0.00119877439042,
    0.00147618560844, 0.00181794224454, 0.00223860214971,
    0.00275687537633, 0.00339471308297, 0.00418062141752,
    0.00514762977308, 0.00633918155348, 0.00780480111772,
    0.00961064602702, 0.0118304971234, 0.0145647517743,
    0.0179219149417, 0.0220527911163, 0.0271124775541,
    0.0333214363101, 0.0408864842127, 0.0501074356716,
    0.0612084049407, 0.0745146949048, 0.0900780900611,
    0.107940155413, 0.127267746478, 0.146676027814,
    0.16225427655, 0.168045766353, 0.152383204788,
    0.101214136498, -0.00244389126667, -0.154078468398,
    -0.303214415655, -0.297674373379, 0.00793541259524,
    0.426273267393, 0.100032384844, -0.494117404043,
    0.392604878741, -0.190111691178, 0.0743654896362,
    -0.0278508428343, 0.0109992061155, -0.00469798719697,
    0.00212587632706, -0.000981986734159, 0.000444992546836,
    -0.000189983519162, 7.31024164292e-05, -2.40057837293e-05,
    6.23096824846e-06, -1.12363896552e-06, 1.04470606055e-07,
];

pub(crate) const J1_140_LOG10_START: f64 = -7.91001919;
pub(crate) const J1_140_LOG10_STEP: f64 = 0.087967143957;
#[rustfmt::skip]
pub(crate) const J1_140_WEIGHTS: [f64; 140] = [
    -6.76671159511e-14, 3.39808396836e-13, -7.43411889153e-13,
    8.93613024469e-13, -5.47341591896e-13, -5.84920181906e-14,
    5.20780672883e-13, -6.92656254606e-13, 6.88908045074e-13,
    -6.39910528298e-13, 5.8209891253e-13, -4.84912700478e-13,
    3.54684337858e-13, -2.10855291368e-13, 1.00452749275e-13,
    5.58449957721e-15, -5.67206735175e-14, 1.09107856853e-13,
    -6.04067500756e-14, 8.84512134731e-14, 2.22321981827e-14,
    8.38072239207e-14, 1.236478359e-13, 1.44351787234e-13,
    2.94276480713e-13, 3.39965995918e-13, 6.1702467234e-13,
    8.25310217692e-13, 1.32560792613e-12, 1.90949961267e-12,
    2.93458179767e-12, 4.33454210095e-12, 6.55863288798e-12,
    9.78324910827e-12, 1.47126365223e-11, 2.20240108708e-11,
    3.30577485691e-11, 4.9537738148e-11, 7.43047574433e-11,
    1.11400535181e-10, 1.67052734516e-10, 2.50470107577e-10,
    3.7559721163e-10, 5.63165204681e-10, 8.44458166896e-10,
    1.26621795331e-09, 1.89866561359e-09, 2.84693620927e-09,
    4.26886170263e-09, 6.40104325574e-09, 9.59798498616e-09,
    1.43918931885e-08, 2.15798696769e-08, 3.2358460081e-08,
    4.85195105813e-08, 7.27538583183e-08, 1.09090191748e-07,
    1.63577866557e-07, 2.4527519392e-07, 3.6778445873e-07,
    5.51470341585e-07, 8.26916206192e-07, 1.23991037294e-06,
    1.85921554669e-06, 2.78777669034e-06, 4.18019870272e-06,
    6.26794044911e-06, 9.39858833064e-06, 1.40925408889e-05,
    2.11312291505e-05, 3.168463429e-05, 4.75093313246e-05,
    7.12354794719e-05, 0.00010681084846, 0.000160146590551,
    0.000240110903628, 0.000359981158972, 0.000539658308918,
    0.000808925141201, 0.00121234066243, 0.00181650387595,
    0.00272068483151, 0.00407274689463, 0.00609135552241,
    0.00909940027636, 0.0135660714813, 0.0201692550906,
    0.0298534800308, 0.043906069722, 0.0639211368217,
    0.0916763946228, 0.128368795114, 0.173241920046,
    0.219830379079, 0.251193131178, 0.232380049895,
    0.117121080205, -0.117252913088, -0.352148528535,
    -0.27116287137, 0.29113474711, 0.317192840623,
    -0.493075681595, 0.311223091821, -0.136044122543,
    0.0512141261934, -0.0190806300761, 0.00757044398633,
    -0.00325432753751, 0.00149774676371, -0.000724569558272,
    0.000362792644965, -0.000185907973641, 9.67201396593e-05,
    -5.07744171678e-05, 2.67510121456e-05, -1.40667136728e-05,
    7.33363699547e-06, -3.7563876705e-06, 1.8634421128e-06,
    -8.71623576811e-07, 3.61028200288e-07, -1.05847108097e-07,
    -1.5156936149e-08, 6.6763324142e-08, -8.33741579804e-08,
    8.31065906136e-08, -7.53457009758e-08, 6.48057680299e-08,
    -5.37558016587e-08, 4.32436265303e-08, -3.37262648712e-08,
    2.53558687098e-08, -1.81287021528e-08, 1.20228328586e-08,
    -7.10898040664e-09, 3.53667004588e-09, -1.36030600198e-09,
    3.52544249042e-10, -4.53719284366e-11,
];
