// Chebyshev coefficients (first kind, argument 2p-1) of the Riemann-Siegel
// correction coefficients C_0..C_4 on p in [0, 1].
pub(crate) const CHEB_DEGREE: usize = 56;

pub(crate) const RS_CORRECTION_CHEB: [[f64; CHEB_DEGREE + 1]; 5] = [
    [
        0.64266728623976838,
        6.9452342488469179e-62,
        0.27197299999785507,
        3.0304727772391614e-62,
        0.010738605819340284,
        2.9428937391502208e-62,
        -0.0013743815296336614,
        -1.1709268865604308e-61,
        -0.00012468221880320677,
        1.3273403383664484e-61,
        -5.7645997067830480e-7,
        -6.4060181852562129e-62,
        2.7280674295804522e-7,
        -1.7425334441919735e-61,
        8.0779530595004706e-9,
        4.3683054903680162e-62,
        -2.0884608068869654e-10,
        9.6784329222274664e-62,
        -1.3115561854739527e-11,
        7.7198082081640141e-62,
        -1.4207987228087185e-14,
        1.0707183963425775e-61,
        1.0271701357931162e-14,
        -1.5529729474087909e-62,
        1.3974598819518374e-16,
        4.6293478319873645e-61,
        -4.4841187339522883e-18,
        7.2137354800006306e-61,
        -1.1830599573845289e-19,
        8.8522995609907320e-61,
        9.3898695603999356e-22,
        1.6375421375284846e-61,
        5.6018228473206969e-23,
        4.5704657717506481e-61,
        1.0023543875614807e-25,
        -2.2570548173308891e-61,
        -1.7592985581293887e-26,
        4.1276628919276915e-61,
        -1.4854553062733663e-28,
        -1.2648906896210092e-61,
        3.8087608010848310e-30,
        -9.9976477016908213e-62,
        5.9011831395297341e-32,
        -1.1465524834976552e-61,
        -5.3644065889517071e-34,
        1.7080074676639439e-61,
        -1.5079228966504239e-35,
        3.1767280598592286e-62,
        2.9737477613576620e-38,
        7.7525566417727928e-61,
        2.8310606407975303e-39,
        1.3026205913586258e-61,
        7.4164424415873754e-42,
        1.5195391617181558e-61,
        -4.0777297147157103e-43,
        -5.2320282291769550e-61,
        -2.6778721593783448e-45,
    ],
    [
        5.1948677410313068e-62,
        0.010697913921003001,
        4.5348909566469972e-62,
        0.017170651243377884,
        -8.9055321034914366e-62,
        0.0027932111497884711,
        -4.0880606852242853e-62,
        -3.6375653719275042e-5,
        1.1008982150053949e-61,
        -2.7108955231150887e-5,
        -1.0781447003955549e-62,
        -1.0483749866752773e-6,
        -2.3199692829933316e-62,
        5.8864671665275718e-8,
        -8.3272593524003342e-62,
        4.3229672685027791e-9,
        5.4079536897336334e-62,
        -1.1369591588273712e-11,
        6.3971130622800220e-62,
        -6.6998339103553275e-12,
        -7.6840810113781034e-62,
        -1.0079997652808475e-13,
        -4.7166881952759850e-63,
        5.1524880092221163e-15,
        -1.0767051748135297e-62,
        1.5216954471836971e-16,
        1.0144031915506375e-61,
        -1.8619464833687101e-18,
        2.0626186116500251e-63,
        -1.1301846184246265e-19,
        -4.8759627721419217e-62,
        -9.6503064768571035e-23,
        1.7628765340720398e-62,
        5.2266106854276172e-23,
        -2.3073815788995181e-62,
        4.6300490546114012e-25,
        2.8941572985621967e-62,
        -1.6018105598830105e-26,
        -5.2190023998947789e-62,
        -2.6582049781870996e-28,
        5.9885557940968505e-63,
        3.1439928013542951e-30,
        4.1517118598177293e-62,
        9.2047450584852488e-32,
        1.2380471174248105e-62,
        -2.7349725921094303e-34,
        2.1448396958740609e-62,
        -2.2657205956656943e-35,
        -1.0069805773660935e-62,
        -5.4430309965598682e-38,
        2.2608898536578440e-62,
        4.1834154842481798e-39,
        2.4625206605956155e-62,
        2.8406715175693131e-41,
        -2.0659481511784573e-62,
        -5.9301035638793776e-43,
        6.0749911866780153e-64,
    ],
    [
        0.0031461158539889123,
        3.0490292449682989e-60,
        -0.0023087838845307501,
        -3.3595958404682372e-60,
        5.7698207666898440e-5,
        -1.2350796912659169e-60,
        0.00035238862023665901,
        7.9708903194478412e-63,
        2.5246667458684434e-5,
        3.9151805479154290e-60,
        -3.4428211971931359e-6,
        -1.1044617704011371e-60,
        -3.5350745566224589e-7,
        -3.7149673818044157e-60,
        3.7308301837926254e-9,
        2.1346327928937709e-60,
        1.2776951864116635e-9,
        9.3428329099381558e-61,
        2.1874616204147058e-11,
        1.2931956722936426e-60,
        -1.9141410964610370e-12,
        -3.3214983158164200e-60,
        -6.5628831021685227e-14,
        -2.8757206885794406e-61,
        1.2586009182411716e-15,
        3.1456179031216301e-60,
        8.1400766238814627e-17,
        -1.1766440441820959e-60,
        -5.4238742754886074e-20,
        -4.7516515245764896e-62,
        -5.7969801310865431e-20,
        -1.7025034315551261e-60,
        -5.3829165037463970e-22,
        1.9505095826185637e-60,
        2.6010080772383426e-23,
        7.4787583260267708e-61,
        4.6669667749113275e-25,
        -2.2404105176887218e-60,
        -7.2888495360751779e-27,
        1.0615070175943276e-60,
        -2.2500967907231931e-28,
        -5.1702235184306741e-61,
        9.7378549586120287e-31,
        1.2854497779322809e-60,
        7.4146812561434644e-32,
        -7.7909500219060055e-61,
        1.5369645352187620e-34,
        -8.4749056104418527e-61,
        -1.7848849203395842e-35,
        1.4869332686717896e-60,
        -1.2518534861487498e-37,
        -1.1825207175067518e-60,
        3.2008568297298872e-39,
        7.4535450848456063e-61,
        3.8909976424114444e-41,
        -3.3482859582981362e-61,
        -4.1720524488197374e-43,
    ],
    [
        1.0004413100348207e-58,
        7.1232562212038732e-5,
        2.0290782424800773e-58,
        0.00023234305298164808,
        -4.9316233671375079e-58,
        -0.00012929912045472475,
        -9.2032267389043839e-59,
        1.8074496413671439e-5,
        5.1128830552272979e-58,
        6.5261851872204395e-6,
        -9.2961664761440379e-59,
        -1.1696365378521986e-7,
        -1.4370137266361821e-58,
        -7.3494761265181259e-8,
        -2.8812754377825519e-58,
        -1.7750910077907071e-9,
        3.6996117745125340e-58,
        2.5555529613265251e-10,
        2.1428225927024610e-58,
        1.1376636600537299e-11,
        -4.3726468580386157e-58,
        -3.3498638985302769e-13,
        4.6959382914940340e-59,
        -2.5537379354163892e-14,
        4.5282559539793371e-59,
        6.7665007713218708e-17,
        2.8105377136556877e-58,
        2.9768884719919728e-17,
        -2.1728538744953120e-58,
        2.9952208087566914e-19,
        -2.4178762365209457e-58,
        -2.0461188497575092e-20,
        3.4693160539938354e-58,
        -4.0869264533289923e-22,
        -7.0093940492884307e-59,
        8.4476121091139217e-24,
        1.7695219446558204e-59,
        2.8302694448256255e-25,
        -1.9152199967882167e-58,
        -1.7162555945454356e-27,
        9.9807805469780085e-59,
        -1.2805512378156143e-28,
        2.1379436318038454e-58,
        -2.1396329633637816e-31,
        -2.9087927600065559e-58,
        4.1031107336108318e-32,
        1.1646759271099106e-58,
        2.9977902592339909e-34,
        -2.3548597013470332e-59,
        -9.5777956835398959e-36,
        6.6692528043731182e-59,
        -1.2330557586658142e-37,
        -2.0144959798010752e-59,
        1.6040137141376900e-39,
        -1.6510355548934815e-58,
        3.3083776990192167e-41,
        1.3688526535012619e-58,
    ],
    [
        0.00016765745246696860,
        8.8886465240430890e-56,
        -0.00022728768943416726,
        -1.0708924242543117e-55,
        6.4773871884456960e-5,
        -2.7779526450711593e-56,
        -8.4922005001254091e-6,
        1.3123099810361681e-56,
        -2.6161407245219077e-6,
        1.1183595342996796e-55,
        8.3367649687332145e-7,
        -5.7281314057268263e-56,
        6.3247040375448326e-8,
        -1.0599159976778467e-55,
        -1.0059949403001072e-8,
        9.0956572445701878e-56,
        -7.8226772041303331e-10,
        2.8512486277407588e-56,
        3.1676582853498603e-11,
        3.6591793834055471e-57,
        3.5006944702052895e-12,
        -9.8208785286838974e-56,
        -1.4314814511443750e-14,
        2.6295070818471611e-56,
        -7.2694027079217635e-15,
        1.0538073687365360e-55,
        -8.7805565948359568e-17,
        -7.6950727101262281e-56,
        8.1502544749545796e-18,
        -1.8052998714557517e-56,
        1.9208397058220861e-19,
        -9.8176331999469911e-57,
        -5.1756552139529817e-21,
        7.1981743917693328e-56,
        -1.9767736724405780e-22,
        -6.2026272869445624e-57,
        1.6059867343952903e-24,
        -9.5038765356117402e-56,
        1.2658632662439862e-25,
        7.2003674576000058e-56,
        1.6326189825047857e-28,
        5.9127681598868651e-57,
        -5.5372110217423460e-29,
        1.9045985034796257e-57,
        -4.3104843972026350e-31,
        -4.2966483002758092e-56,
        1.7174510567185547e-32,
        -2.3019208682109200e-57,
        2.3846973436381113e-34,
        8.3407598754188031e-56,
        -3.7541877585767457e-36,
        -7.4989031711845533e-56,
        -8.2973644272527257e-38,
        1.7183322742728944e-57,
        5.2272990571501547e-40,
        1.7065714564359135e-56,
        2.1077994572441303e-41,
    ],
];
